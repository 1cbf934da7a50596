#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "goppa/errors.hpp"
#include "goppa/field.hpp"
#include "goppa/gale.hpp"
#include "goppa/linalg.hpp"
#include "goppa/poly.hpp"

namespace goppa {
namespace io {

using json = nlohmann::json;

/// Process exit code for a library error: 3 = input could not even be read,
/// 2 = input read fine but violates a precondition, 1 = the mathematics
/// failed (no certificate, partial torsion, ...).
inline int exit_code_for(errc c) {
    switch (c) {
        case errc::parse_error:
        case errc::not_prime:
            return 3;
        case errc::dimension_mismatch:
        case errc::degenerate:
        case errc::too_few_points:
        case errc::field_too_small:
        case errc::field_not_finite:
        case errc::negative_dual_degree:
        case errc::w_not_complementary:
        case errc::zero_row_in_dual:
        case errc::division_by_zero:
            return 2;
        default:
            return 1;
    }
}

inline json field_to_json(const FieldSpec& spec) {
    if (spec.kind == FieldSpec::Kind::rational) return json{{"type", "rational"}};
    return json{{"type", "prime"}, {"p", spec.p}};
}

inline FieldSpec field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail(errc::parse_error, "field must be an object with a \"type\" string");
    const std::string t = j["type"].get<std::string>();
    if (t == "rational") return FieldSpec::rationals();
    if (t == "prime") {
        if (!j.contains("p") || !j["p"].is_number_integer() || j["p"].get<std::int64_t>() <= 0)
            fail(errc::parse_error, "prime field needs a positive integer \"p\"");
        return FieldSpec::prime(j["p"].get<std::uint64_t>());
    }
    fail(errc::parse_error, "unknown field type \"" + t + "\"");
}

/// --field flag syntax: "rational" or "prime:P".
inline FieldSpec field_from_flag(const std::string& s) {
    if (s == "rational") return FieldSpec::rationals();
    if (s.rfind("prime:", 0) == 0) {
        const std::string digits = s.substr(6);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            fail(errc::parse_error, "--field prime:P needs a decimal modulus, got \"" + s + "\"");
        try {
            return FieldSpec::prime(std::stoull(digits));
        } catch (const std::out_of_range&) {
            fail(errc::parse_error, "modulus out of range in \"" + s + "\"");
        }
    }
    fail(errc::parse_error, "--field must be \"rational\" or \"prime:P\", got \"" + s + "\"");
}

// ---- exact values <-> JSON strings --------------------------------------

template <class K>
json row_to_json(const std::vector<K>& v) {
    json a = json::array();
    for (const K& x : v) a.push_back(x.to_string());
    return a;
}

template <class K>
json points_to_json(const std::vector<std::vector<K>>& pts) {
    json a = json::array();
    for (const auto& p : pts) a.push_back(row_to_json(p));
    return a;
}

template <class K>
json points_to_json(const PointConfig<K>& cfg) {
    return points_to_json(cfg.points());
}

template <class K>
json matrix_to_json(const Matrix<K>& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(row_to_json(m.row(i)));
    return a;
}

template <class F>
typename F::element scalar_from_json(const F& fld, const json& j) {
    if (!j.is_string()) fail(errc::parse_error, "exact values are JSON strings");
    try {
        return fld.parse(j.get<std::string>());
    } catch (const error& e) {
        if (e.code() == errc::parse_error) throw;
        fail(errc::parse_error, std::string("bad literal: ") + e.what());
    }
}

template <class F>
std::vector<typename F::element> row_from_json(const F& fld, const json& j) {
    if (!j.is_array() || j.empty()) fail(errc::parse_error, "a point is a nonempty array of strings");
    std::vector<typename F::element> out;
    out.reserve(j.size());
    for (const auto& el : j) out.push_back(scalar_from_json(fld, el));
    return out;
}

template <class F>
std::vector<std::vector<typename F::element>> rows_from_json(const F& fld, const json& j) {
    if (!j.is_array() || j.empty()) fail(errc::parse_error, "expected a nonempty array of points");
    std::vector<std::vector<typename F::element>> rows;
    rows.reserve(j.size());
    for (const auto& r : j) {
        rows.push_back(row_from_json(fld, r));
        if (rows.back().size() != rows.front().size())
            fail(errc::parse_error, "rows have unequal lengths");
    }
    return rows;
}

template <class F>
PointConfig<typename F::element> config_from_json(const F& fld, const json& j) {
    return PointConfig<typename F::element>::from_points(fld, rows_from_json(fld, j));
}

template <class F>
Matrix<typename F::element> matrix_from_json(const F& fld, const json& j) {
    return Matrix<typename F::element>::from_rows(fld, rows_from_json(fld, j));
}

// ---- homogeneous polynomials as {"e0,e1,e2": "coeff"} objects ------------

inline std::string exponent_key(const std::vector<unsigned>& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(e[i]);
    }
    return s;
}

inline std::vector<unsigned> exponent_from_key(const std::string& key) {
    std::vector<unsigned> e;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        std::size_t comma = key.find(',', pos);
        if (comma == std::string::npos) comma = key.size();
        const std::string part = key.substr(pos, comma - pos);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            fail(errc::parse_error, "bad exponent key \"" + key + "\"");
        e.push_back(static_cast<unsigned>(std::stoul(part)));
        pos = comma + 1;
    }
    return e;
}

template <class K>
json poly_to_json(const HomogPoly<K>& f) {
    MonomialBasis basis(f.degree(), f.n_vars());
    json out = json::object();
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!f[i].is_zero()) out[exponent_key(basis.exps[i])] = f[i].to_string();
    return out;
}

template <class F>
HomogPoly<typename F::element> poly_from_json(const F& fld, unsigned n_vars, const json& j) {
    if (!j.is_object() || j.empty())
        fail(errc::parse_error, "a polynomial is a nonempty {\"e0,e1,...\": coeff} object");
    unsigned degree = 0;
    bool first = true;
    HomogPoly<typename F::element> f(fld, 0, n_vars);
    for (const auto& item : j.items()) {
        auto e = exponent_from_key(item.key());
        if (e.size() != n_vars)
            fail(errc::parse_error, "exponent key \"" + item.key() + "\" has wrong arity");
        unsigned total = 0;
        for (unsigned x : e) total += x;
        if (first) {
            degree = total;
            f = HomogPoly<typename F::element>(fld, degree, n_vars);
            first = false;
        } else if (total != degree) {
            fail(errc::parse_error, "mixed degrees in polynomial object");
        }
        f.coeff(e) = scalar_from_json(fld, item.value());
    }
    return f;
}

template <class K>
json system_to_json(const std::vector<HomogPoly<K>>& polys) {
    json a = json::array();
    for (const auto& f : polys) a.push_back(poly_to_json(f));
    return a;
}

// ---- certificates ---------------------------------------------------------

template <class K>
json cert_to_json(const DualCertificate<K>& c) {
    return json{{"a", points_to_json(c.a)}, {"b", points_to_json(c.b)}, {"d", row_to_json(c.d)}};
}

// ---- config files and reports ---------------------------------------------

/// 64-bit FNV-1a over the canonical (sorted-key, compact) dump.
inline std::string digest(const json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xf);
    return os.str();
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse_error, "cannot open \"" + path + "\"");
    try {
        json j;
        in >> j;
        return j;
    } catch (const std::exception& e) {
        fail(errc::parse_error, "invalid JSON in \"" + path + "\": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(errc::parse_error, "cannot write \"" + path + "\"");
    out << j.dump(2) << '\n';
}

struct ConfigFile {
    FieldSpec field;
    json points;  // raw array of arrays of strings, parsed once the field is fixed
    json meta;
};

inline ConfigFile load_config(const json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("points"))
        fail(errc::parse_error, "a configuration file needs \"field\" and \"points\"");
    return ConfigFile{field_from_json(j["field"]), j["points"], j.value("meta", json::object())};
}

inline ConfigFile load_config_file(const std::string& path) {
    return load_config(read_json_file(path));
}

inline json config_to_json(const FieldSpec& spec, const json& points, const json& meta) {
    json j{{"field", field_to_json(spec)}, {"points", points}};
    if (!meta.is_null() && !(meta.is_object() && meta.empty())) j["meta"] = meta;
    return j;
}

}  // namespace io
}  // namespace goppa
