// Command-line front end: configuration I/O, the pipeline commands, seeded
// instance generation, and certificate verification.  Every command emits a
// JSON report; `verify` re-checks a report from its own contents alone.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <goppa/curves.hpp>
#include <goppa/elliptic.hpp>
#include <goppa/errors.hpp>
#include <goppa/field.hpp>
#include <goppa/gale.hpp>
#include <goppa/io.hpp>
#include <goppa/linalg.hpp>
#include <goppa/poly.hpp>
#include <goppa/surface.hpp>

namespace {

namespace io = goppa::io;
using goppa::errc;
using goppa::error;
using goppa::fail;
using goppa::FieldSpec;
using json = nlohmann::json;

// ---- small exact-geometry helpers ------------------------------------------

template <class K>
bool nonzero_vec(const std::vector<K>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return true;
    return false;
}

/// u = lambda * v with lambda != 0.
template <class K>
bool same_point(const std::vector<K>& u, const std::vector<K>& v) {
    return u.size() == v.size() && nonzero_vec(u) && nonzero_vec(v) &&
           goppa::normalize_scale(u) == goppa::normalize_scale(v);
}

// ---- report plumbing --------------------------------------------------------

json make_report(const std::string& command, const FieldSpec& spec, const json& points) {
    json inputs;
    inputs["digest"] = io::digest(json{{"field", io::field_to_json(spec)}, {"points", points}});
    inputs["points"] = points;
    return json{{"command", command},
                {"field", io::field_to_json(spec)},
                {"inputs", inputs},
                {"status", "ok"}};
}

template <class F>
goppa::PointConfig<typename F::element> parse_config(const F& fld, const json& points) {
    auto cfg = io::config_from_json(fld, points);
    if (cfg.has_zero_row()) fail(errc::degenerate, "configuration contains a zero row");
    return cfg;
}

// ---- pipeline commands ------------------------------------------------------

template <class F>
json run_gale(const F& fld, const FieldSpec& spec, const json& points) {
    auto cfg = parse_config(fld, points);
    auto dual = goppa::gale_transform(cfg);
    json rep = make_report("gale", spec, points);
    rep["outputs"]["dual_points"] = io::points_to_json(dual);
    rep["outputs"]["dual_config"] = io::config_to_json(
        spec, io::points_to_json(dual), json{{"description", "Gale dual configuration"}});
    rep["certificates"]["orthogonal"] = (cfg.matrix().transpose() * dual.matrix()).is_zero();
    return rep;
}

template <class F>
json run_rnc(const F& fld, const FieldSpec& spec, const json& points) {
    auto cfg = parse_config(fld, points);
    auto rnc = goppa::rnc_through(cfg);
    json rep = make_report("rnc", spec, points);
    rep["outputs"]["s"] = rnc.s;
    rep["outputs"]["map"] = io::matrix_to_json(rnc.map);
    rep["outputs"]["parameters"] = io::points_to_json(rnc.gale_points);
    json hits = json::array();
    for (std::size_t i = 0; i < cfg.size(); ++i)
        hits.push_back(same_point(goppa::rnc_eval(rnc, rnc.gale_points.point(i)), cfg.point(i)));
    rep["outputs"]["hits"] = hits;
    rep["certificates"]["transport_dim"] = rnc.transport_dim;
    for (const auto& h : hits)
        if (!h.get<bool>()) fail(errc::certificate_not_found, "curve misses an interpolation point");
    return rep;
}

template <class F>
json run_conic5(const F& fld, const FieldSpec& spec, const json& points) {
    auto cfg = parse_config(fld, points);
    auto conic = goppa::conic_through_five(cfg);
    json rep = make_report("conic5", spec, points);
    rep["outputs"]["conic"] = io::poly_to_json(conic);
    return rep;
}

template <class F>
json run_pencil9(const F& fld, const FieldSpec& spec, const json& points) {
    auto cfg = parse_config(fld, points);
    auto nin = goppa::cubic_pencil_ninth(cfg);
    json rep = make_report("pencil9", spec, points);
    rep["outputs"]["ninth"] = io::row_to_json(nin.ninth);
    rep["outputs"]["f"] = io::poly_to_json(nin.f);
    rep["outputs"]["g"] = io::poly_to_json(nin.g);
    rep["outputs"]["pencil_dim"] = nin.pencil_dim;
    return rep;
}

template <class F>
void put_blowup(const F& fld, json& rep, const goppa::BlowupFactorization<typename F::element>& b) {
    json excess = json::array();
    for (const auto& bp : b.excess)
        excess.push_back(
            json{{"point", io::row_to_json(bp.point)}, {"multiplicity", bp.multiplicity}});
    rep["outputs"]["gale_points"] = io::points_to_json(b.gale_config);
    rep["outputs"]["excess"] = excess;
    rep["outputs"]["system"] = io::system_to_json(goppa::system_polys(fld, 2, 3, b.system));
    rep["outputs"]["system_dim"] = b.system.dim();
    rep["outputs"]["target_dim"] = b.target_dim;
    rep["certificates"]["gale_dual"] = io::cert_to_json(b.cert);
    rep["certificates"]["transport"] = io::matrix_to_json(b.transport);
    rep["certificates"]["transport_dim"] = b.transport_dim;
}

template <class F>
json run_eightp4(const F& fld, const FieldSpec& spec, const json& points, std::uint64_t seed) {
    auto cfg = parse_config(fld, points);
    auto b = goppa::eight_points_p4(cfg, seed);
    json rep = make_report("eightp4", spec, points);
    rep["seed"] = seed;
    put_blowup(fld, rep, b);
    return rep;
}

template <class F>
json run_sevenp3(const F& fld, const FieldSpec& spec, const json& points, std::uint64_t seed,
                 std::pair<std::size_t, std::size_t> pair_choice) {
    auto cfg = parse_config(fld, points);
    auto b = goppa::seven_points_p3(cfg, pair_choice, seed);
    json rep = make_report("sevenp3", spec, points);
    rep["seed"] = seed;
    rep["outputs"]["pair"] = json::array({pair_choice.first, pair_choice.second});
    put_blowup(fld, rep, b);
    return rep;
}

template <class F>
json run_ci33(const F& fld, const FieldSpec& spec, const json& points, std::uint64_t seed) {
    auto cfg = parse_config(fld, points);
    if (cfg.size() != 9 || cfg.dim() != 2) fail(errc::dimension_mismatch, "need nine points of P^2");
    auto pencil = goppa::kernel(goppa::evaluation_matrix(fld, 3, cfg.points(), 3));
    if (pencil.dim() != 2)
        fail(errc::pencil_dim_wrong, "cubics through the nine points form a space of dimension " +
                                         std::to_string(pencil.dim()) + ", expected 2");
    auto cubics = goppa::system_polys(fld, 3, 3, pencil);
    auto ci = goppa::make_ci(3u, 3u, cubics[0], cubics[1], cfg);
    auto ver = goppa::veronese_from_ci33(ci, seed);
    json rep = make_report("ci33", spec, points);
    rep["seed"] = seed;
    rep["outputs"]["f"] = io::poly_to_json(ci.f);
    rep["outputs"]["g"] = io::poly_to_json(ci.g);
    rep["outputs"]["images"] = io::points_to_json(ver.images);
    rep["certificates"]["veronese_dual"] = io::cert_to_json(ver.cert);
    return rep;
}

json run_coble9(const goppa::PrimeField& fld, const FieldSpec& spec, const json& points,
                std::uint64_t seed, std::size_t samples) {
    auto cfg = parse_config(fld, points);
    auto coble = goppa::coble_four_veronese(cfg, seed, samples, true);
    auto chk = goppa::is_gale_dual(cfg, coble.gamma2, seed);
    if (!chk.ok()) fail(errc::certificate_not_found, "no Gale certificate for the dual pair");
    json rep = make_report("coble9", spec, points);
    rep["seed"] = seed;
    rep["certificates"]["gale_dual"] = io::cert_to_json(*chk.certificate);
    rep["outputs"]["factorizations"] = coble.factors.size();
    rep["outputs"]["gamma2"] = io::points_to_json(coble.gamma2);
    rep["outputs"]["cubic"] = io::poly_to_json(coble.cubic.f);
    rep["outputs"]["origin"] = io::row_to_json(coble.cubic.origin);
    rep["outputs"]["target"] =
        json{{"degree", coble.target.degree}, {"abel", io::row_to_json(coble.target.abel)}};
    json factors = json::array();
    for (const auto& fac : coble.factors) {
        json f;
        f["class"] = json{{"degree", fac.cls.degree}, {"abel", io::row_to_json(fac.cls.abel)}};
        f["triple"] = io::points_to_json(fac.triple);
        f["conics"] = io::system_to_json(goppa::system_polys(fld, 2, 3, fac.conics));
        f["quartics"] = io::system_to_json(goppa::system_polys(fld, 4, 3, fac.quartics));
        f["images"] = io::points_to_json(fac.images);
        f["transport"] = io::matrix_to_json(fac.transport);
        f["transport_dim"] = fac.transport_dim;
        f["samples"] = io::points_to_json(fac.samples);
        f["quadrics"] = io::system_to_json(goppa::system_polys(fld, 2, 6, fac.quadrics));
        factors.push_back(std::move(f));
    }
    rep["outputs"]["factors"] = std::move(factors);
    return rep;
}

json run_gen(const FieldSpec& spec, const std::string& kind, std::size_t n, std::size_t dim,
             std::uint64_t seed) {
    json pts;
    std::string desc;
    if (kind == "points") {
        if (n == 0 || dim == 0) fail(errc::parse_error, "gen --kind points needs --n and --dim");
        pts = goppa::with_field(spec, [&](auto fld) {
            return io::points_to_json(goppa::gen_general_points(fld, n, dim, seed));
        });
        desc = std::to_string(n) + " seeded general points of P^" + std::to_string(dim);
    } else if (kind == "pencil9") {
        pts = goppa::with_field(spec, [&](auto fld) {
            return io::points_to_json(goppa::gen_cubic_pencil_base(fld, seed).points);
        });
        desc = "base locus of a seeded cubic pencil";
    } else {
        fail(errc::parse_error, "gen --kind must be \"points\" or \"pencil9\"");
    }
    return io::config_to_json(spec, pts, json{{"description", desc}, {"seed", seed}});
}

// ---- verify -----------------------------------------------------------------

const json& need(const json& j, const std::string& key) {
    if (!j.is_object()) fail(errc::parse_error, "malformed report around \"" + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) fail(errc::parse_error, "report is missing \"" + key + "\"");
    return *it;
}

[[noreturn]] void reject(const std::string& check, const std::string& why) {
    fail(errc::certificate_not_found, check + ": " + why);
}

void ensure(bool ok, const std::string& check, const std::string& why) {
    if (!ok) reject(check, why);
}

template <class F>
std::vector<goppa::HomogPoly<typename F::element>> polys_from_json(const F& fld, unsigned n_vars,
                                                                   unsigned degree, const json& arr,
                                                                   const std::string& check) {
    if (!arr.is_array() || arr.empty()) fail(errc::parse_error, check + ": expected an array");
    std::vector<goppa::HomogPoly<typename F::element>> out;
    for (const auto& el : arr) {
        out.push_back(io::poly_from_json(fld, n_vars, el));
        ensure(out.back().degree() == degree, check, "wrong degree");
        ensure(nonzero_vec(out.back().coeffs()), check, "zero polynomial");
    }
    return out;
}

template <class F>
goppa::Matrix<typename F::element> coeff_columns(
    const F& fld, const std::vector<goppa::HomogPoly<typename F::element>>& ps) {
    goppa::Matrix<typename F::element> m(fld, ps.front().coeffs().size(), ps.size());
    for (std::size_t j = 0; j < ps.size(); ++j)
        for (std::size_t i = 0; i < ps[j].coeffs().size(); ++i) m(i, j) = ps[j][i];
    return m;
}

/// Bᵀ diag(D) A = 0 with every D entry nonzero.
template <class F>
void check_dual_certificate(const F& fld, const json& cert, const goppa::PointConfig<typename F::element>& a,
                            const goppa::PointConfig<typename F::element>& b, const std::string& check) {
    auto d = io::row_from_json(fld, need(cert, "d"));
    ensure(d.size() == a.size() && a.size() == b.size(), check, "size mismatch");
    for (const auto& x : d) ensure(!x.is_zero(), check, "zero diagonal entry");
    auto ja = io::config_from_json(fld, need(cert, "a"));
    auto jb = io::config_from_json(fld, need(cert, "b"));
    ensure(ja.matrix() == a.matrix(), check, "certificate A differs from the report's configuration");
    ensure(jb.matrix() == b.matrix(), check, "certificate B differs from the report's configuration");
    goppa::Matrix<typename F::element> scaled = a.matrix();
    for (std::size_t i = 0; i < scaled.rows(); ++i)
        for (std::size_t j = 0; j < scaled.cols(); ++j) scaled(i, j) = d[i] * scaled(i, j);
    ensure((b.matrix().transpose() * scaled).is_zero(), check, "B^T diag(D) A != 0");
}

template <class F>
void check_transport(const F& fld, const json& certs, const goppa::PointConfig<typename F::element>& src,
                     const goppa::PointConfig<typename F::element>& dst, const std::string& check) {
    auto m = io::matrix_from_json(fld, need(certs, "transport"));
    ensure(m.rows() == dst.dim() + 1 && m.cols() == src.dim() + 1, check, "transport shape");
    for (std::size_t i = 0; i < src.size(); ++i)
        ensure(same_point(m.apply(src.point(i)), dst.point(i)), check,
               "row " + std::to_string(i) + " is not carried onto its target");
    ensure(need(certs, "transport_dim").get<std::size_t>() == 1, check, "solution space is not a line");
}

template <class F>
void verify_gale(const F& fld, const json& rep, std::vector<std::string>& checks) {
    auto cfg = io::config_from_json(fld, need(need(rep, "inputs"), "points"));
    auto dual = io::config_from_json(fld, need(need(rep, "outputs"), "dual_points"));
    ensure(dual.size() == cfg.size() && cfg.size() == cfg.dim() + dual.dim() + 2, "dual_shape",
           "gamma != r + s + 2");
    ensure(!dual.has_zero_row(), "dual_shape", "zero row");
    ensure(goppa::rank(dual.matrix()) == dual.dim() + 1, "dual_rank", "dual configuration is degenerate");
    checks.push_back("dual_shape");
    checks.push_back("dual_rank");
    ensure((cfg.matrix().transpose() * dual.matrix()).is_zero(), "orthogonal", "(G')^T G != 0");
    ensure(need(need(rep, "certificates"), "orthogonal").get<bool>(), "orthogonal", "flag is false");
    checks.push_back("orthogonal");
}

template <class F>
void verify_rnc(const F& fld, const json& rep, std::vector<std::string>& checks) {
    auto cfg = io::config_from_json(fld, need(need(rep, "inputs"), "points"));
    const json& outputs = need(rep, "outputs");
    const std::size_t s = need(outputs, "s").get<std::size_t>();
    ensure(cfg.dim() == s && cfg.size() == s + 3, "curve_shape", "need s+3 points of P^s");
    auto map = io::matrix_from_json(fld, need(outputs, "map"));
    ensure(map.rows() == s + 1 && map.cols() == s + 1, "curve_shape", "map shape");
    checks.push_back("curve_shape");
    ensure(!goppa::det(map).is_zero(), "map_invertible", "determinant vanishes");
    checks.push_back("map_invertible");
    auto params = io::config_from_json(fld, need(outputs, "parameters"));
    ensure(params.size() == s + 3 && params.dim() == 1, "parameters", "need s+3 points of P^1");
    ensure(params.pairwise_distinct(), "parameters", "parameters collide");
    checks.push_back("parameters");
    const json& hits = need(outputs, "hits");
    ensure(hits.is_array() && hits.size() == cfg.size(), "interpolation", "hit list shape");
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        ensure(same_point(map.apply(goppa::veronese_p1(fld, s, params.point(i))), cfg.point(i)),
               "interpolation", "point " + std::to_string(i) + " is missed");
        ensure(hits[i].get<bool>(), "interpolation", "hit flag " + std::to_string(i) + " is false");
    }
    checks.push_back("interpolation");
    ensure(need(need(rep, "certificates"), "transport_dim").get<std::size_t>() == 1, "transport_dim",
           "solution space is not a line");
    checks.push_back("transport_dim");
}

template <class F>
void verify_conic5(const F& fld, const json& rep, std::vector<std::string>& checks) {
    auto cfg = io::config_from_json(fld, need(need(rep, "inputs"), "points"));
    ensure(cfg.size() == 5 && cfg.dim() == 2, "conic_shape", "need five points of P^2");
    auto conic = io::poly_from_json(fld, 3, need(need(rep, "outputs"), "conic"));
    ensure(conic.degree() == 2, "conic_shape", "not a conic");
    ensure(nonzero_vec(conic.coeffs()), "conic_shape", "zero polynomial");
    checks.push_back("conic_shape");
    for (const auto& p : cfg.points())
        ensure(conic.evaluate(p).is_zero(), "conic_on_points", "conic misses a point");
    checks.push_back("conic_on_points");
    ensure(goppa::rank(goppa::evaluation_matrix(fld, 2, cfg.points(), 3)) == 5, "conic_unique",
           "five points do not pin the conic");
    checks.push_back("conic_unique");
}

template <class F>
void verify_pencil9(const F& fld, const json& rep, std::vector<std::string>& checks) {
    auto cfg = io::config_from_json(fld, need(need(rep, "inputs"), "points"));
    const json& outputs = need(rep, "outputs");
    ensure(cfg.size() == 8 && cfg.dim() == 2, "pencil_shape", "need eight points of P^2");
    auto f = io::poly_from_json(fld, 3, need(outputs, "f"));
    auto g = io::poly_from_json(fld, 3, need(outputs, "g"));
    ensure(f.degree() == 3 && g.degree() == 3, "pencil_shape", "not cubics");
    auto ninth = io::row_from_json(fld, need(outputs, "ninth"));
    ensure(ninth.size() == 3 && nonzero_vec(ninth), "pencil_shape", "bad ninth point");
    ensure(need(outputs, "pencil_dim").get<std::size_t>() == 2, "pencil_shape", "pencil_dim != 2");
    checks.push_back("pencil_shape");
    for (const auto& p : cfg.points())
        ensure(f.evaluate(p).is_zero() && g.evaluate(p).is_zero(), "pencil_on_points",
               "a generator misses a base point");
    ensure(f.evaluate(ninth).is_zero() && g.evaluate(ninth).is_zero(), "pencil_on_points",
           "a generator misses the ninth point");
    checks.push_back("pencil_on_points");
    ensure(goppa::rank(coeff_columns(fld, std::vector<goppa::HomogPoly<typename F::element>>{f, g})) == 2,
           "pencil_rank", "generators are dependent");
    checks.push_back("pencil_rank");
    for (const auto& p : cfg.points())
        ensure(!same_point(ninth, p), "ninth_new", "ninth point repeats a base point");
    checks.push_back("ninth_new");
}

template <class F>
void verify_blowup(const F& fld, const json& rep, std::vector<std::string>& checks, std::size_t s,
                   std::size_t n_excess) {
    auto ambient = io::config_from_json(fld, need(need(rep, "inputs"), "points"));
    const json& outputs = need(rep, "outputs");
    const json& certs = need(rep, "certificates");
    ensure(ambient.size() == s + 4 && ambient.dim() == s, "ambient_shape",
           "need s+4 points of P^s");
    checks.push_back("ambient_shape");

    auto plane = io::config_from_json(fld, need(outputs, "gale_points"));
    ensure(plane.size() == ambient.size() && plane.dim() == 2, "gale_points", "shape");
    ensure((ambient.matrix().transpose() * plane.matrix()).is_zero(), "gale_points",
           "not orthogonal to the input");
    checks.push_back("gale_points");

    auto sys = polys_from_json(fld, 3, 2, need(outputs, "system"), "system");
    ensure(sys.size() == s + 1 && need(outputs, "system_dim").get<std::size_t>() == s + 1, "system",
           "wrong dimension");
    ensure(goppa::rank(coeff_columns(fld, sys)) == s + 1, "system", "dependent basis");
    ensure(need(outputs, "target_dim").get<std::size_t>() == s, "system", "target_dim != s");
    checks.push_back("system");

    const json& excess = need(outputs, "excess");
    ensure(excess.is_array() && excess.size() == n_excess, "excess_membership", "excess count");
    for (const auto& e : excess) {
        auto p = io::row_from_json(fld, need(e, "point"));
        ensure(p.size() == 3 && nonzero_vec(p), "excess_membership", "bad excess point");
        ensure(need(e, "multiplicity").get<unsigned>() == 1, "excess_membership", "multiplicity != 1");
        for (const auto& q : sys)
            ensure(q.evaluate(p).is_zero(), "excess_membership", "a conic misses an excess point");
    }
    checks.push_back("excess_membership");

    // the certified series rows are exactly the system evaluated at the Gale points
    auto b = io::config_from_json(fld, need(need(certs, "gale_dual"), "b"));
    ensure(b.size() == plane.size() && b.dim() == s, "series_rows", "shape");
    for (std::size_t i = 0; i < plane.size(); ++i)
        for (std::size_t j = 0; j <= s; ++j)
            ensure(b.matrix()(i, j) == sys[j].evaluate(plane.point(i)), "series_rows",
                   "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not the evaluation");
    checks.push_back("series_rows");

    check_dual_certificate(fld, need(certs, "gale_dual"), plane, b, "gale_dual");
    checks.push_back("gale_dual");

    check_transport(fld, certs, b, ambient, "transport");
    checks.push_back("transport");
}

template <class F>
void verify_ci33(const F& fld, const json& rep, std::vector<std::string>& checks) {
    auto gamma = io::config_from_json(fld, need(need(rep, "inputs"), "points"));
    const json& outputs = need(rep, "outputs");
    ensure(gamma.size() == 9 && gamma.dim() == 2, "ci_shape", "need nine points of P^2");
    auto f = io::poly_from_json(fld, 3, need(outputs, "f"));
    auto g = io::poly_from_json(fld, 3, need(outputs, "g"));
    ensure(f.degree() == 3 && g.degree() == 3, "ci_shape", "not cubics");
    checks.push_back("ci_shape");
    for (const auto& p : gamma.points())
        ensure(f.evaluate(p).is_zero() && g.evaluate(p).is_zero(), "pencil_on_points",
               "a generator misses a base point");
    checks.push_back("pencil_on_points");
    ensure(goppa::rank(coeff_columns(fld, std::vector<goppa::HomogPoly<typename F::element>>{f, g})) == 2,
           "pencil_rank", "generators are dependent");
    checks.push_back("pencil_rank");
    auto images = io::config_from_json(fld, need(outputs, "images"));
    ensure(images.size() == 9 && images.dim() == 5, "images_veronese", "shape");
    ensure(images.matrix() == goppa::evaluation_matrix(fld, 2, gamma.points(), 3), "images_veronese",
           "images are not the quadric Veronese evaluations");
    checks.push_back("images_veronese");
    check_dual_certificate(fld, need(need(rep, "certificates"), "veronese_dual"), gamma, images,
                           "veronese_dual");
    checks.push_back("veronese_dual");
}

template <class F>
void verify_coble9(const F& fld, const json& rep, std::vector<std::string>& checks) {
    using K = typename F::element;
    auto gamma5 = io::config_from_json(fld, need(need(rep, "inputs"), "points"));
    const json& outputs = need(rep, "outputs");
    ensure(gamma5.size() == 9 && gamma5.dim() == 5, "coble_shape", "need nine points of P^5");
    checks.push_back("coble_shape");

    auto gamma2 = io::config_from_json(fld, need(outputs, "gamma2"));
    ensure(gamma2.size() == 9 && gamma2.dim() == 2, "gamma2", "shape");
    ensure(gamma2.pairwise_distinct(), "gamma2", "repeated points");
    checks.push_back("gamma2");
    check_dual_certificate(fld, need(need(rep, "certificates"), "gale_dual"), gamma5, gamma2,
                           "gale_dual");
    checks.push_back("gale_dual");

    auto cubic_poly = io::poly_from_json(fld, 3, need(outputs, "cubic"));
    ensure(cubic_poly.degree() == 3, "cubic", "not a cubic");
    for (const auto& p : gamma2.points())
        ensure(cubic_poly.evaluate(p).is_zero(), "cubic", "misses one of the nine");
    ensure(goppa::rank(goppa::evaluation_matrix(fld, 3, gamma2.points(), 3)) == 9, "cubic",
           "the nine points do not pin the cubic");
    auto origin = io::row_from_json(fld, need(outputs, "origin"));
    goppa::PlaneCubic<K> C{cubic_poly, origin};
    try {
        C = goppa::make_plane_cubic(cubic_poly, origin);
    } catch (const error& e) {
        reject("cubic", e.what());
    }
    checks.push_back("cubic");

    const json& target = need(outputs, "target");
    auto target_abel = io::row_from_json(fld, need(target, "abel"));
    ensure(need(target, "degree").get<long long>() == 6, "target_class", "degree != 6");
    {
        auto line_sum = goppa::third_intersection(C, C.origin, C.origin);
        auto gamma_cls = goppa::abel_sum(C, gamma2.points());
        auto expect = goppa::add(C, goppa::mul(C, 5, line_sum), goppa::neg(C, gamma_cls.abel));
        ensure(same_point(target_abel, expect), "target_class",
               "Abel point is not 5L minus the nine");
    }
    checks.push_back("target_class");

    const json& factors = need(outputs, "factors");
    ensure(factors.is_array() && factors.size() == 4, "factor_count", "need exactly four factors");
    ensure(need(outputs, "factorizations").get<std::size_t>() == factors.size(), "factor_count",
           "count disagrees with the factor list");
    checks.push_back("factor_count");

    std::vector<goppa::Matrix<K>> quadric_spaces;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        const json& fac = factors[k];
        const std::string tag = "[" + std::to_string(k) + "]";

        auto triple = io::rows_from_json(fld, need(fac, "triple"));
        ensure(triple.size() == 3, "triple" + tag, "need three points");
        {
            goppa::Matrix<K> tm(fld, 3, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) tm(i, j) = triple[i][j];
            ensure(!goppa::det(tm).is_zero(), "triple" + tag, "collinear");
        }
        for (const auto& r : triple) {
            ensure(cubic_poly.evaluate(r).is_zero(), "triple" + tag, "a point is off the cubic");
            for (const auto& p : gamma2.points())
                ensure(!same_point(r, p), "triple" + tag, "collides with the nine");
        }
        checks.push_back("triple" + tag);

        const json& cls = need(fac, "class");
        auto cls_abel = io::row_from_json(fld, need(cls, "abel"));
        ensure(need(cls, "degree").get<long long>() == 3, "class" + tag, "degree != 3");
        ensure(same_point(goppa::abel_sum(C, triple).abel, cls_abel), "class" + tag,
               "triple does not realize the class");
        ensure(same_point(goppa::mul(C, 2, cls_abel), target_abel), "class" + tag,
               "class is not a square root of the target");
        checks.push_back("class" + tag);

        auto conics = polys_from_json(fld, 3, 2, need(fac, "conics"), "conics" + tag);
        ensure(conics.size() == 3, "conics" + tag, "need a net");
        ensure(goppa::rank(coeff_columns(fld, conics)) == 3, "conics" + tag, "dependent basis");
        for (const auto& q : conics)
            for (const auto& r : triple)
                ensure(q.evaluate(r).is_zero(), "conics" + tag, "a conic misses the triple");
        checks.push_back("conics" + tag);

        auto quartics = polys_from_json(fld, 3, 4, need(fac, "quartics"), "quartics" + tag);
        ensure(quartics.size() == 6, "quartics" + tag, "need dimension six");
        ensure(goppa::rank(coeff_columns(fld, quartics)) == 6, "quartics" + tag, "dependent basis");
        for (const auto& q : quartics)
            for (const auto& r : triple) {
                ensure(q.evaluate(r).is_zero(), "quartics" + tag, "a quartic misses a node");
                for (unsigned v = 0; v < 3; ++v)
                    ensure(q.partial(v).evaluate(r).is_zero(), "quartics" + tag,
                           "a quartic is not singular at a node");
            }
        checks.push_back("quartics" + tag);

        {
            std::vector<goppa::HomogPoly<K>> products;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i; j < 3; ++j) products.push_back(conics[i] * conics[j]);
            auto pm = coeff_columns(fld, products);
            ensure(goppa::rank(pm) == 6, "products_span" + tag, "products are dependent");
            ensure(goppa::rank(goppa::hstack(coeff_columns(fld, quartics), pm)) == 6,
                   "products_span" + tag, "products leave the quartic space");
        }
        checks.push_back("products_span" + tag);

        auto images = io::config_from_json(fld, need(fac, "images"));
        ensure(images.size() == 9 && images.dim() == 5, "images" + tag, "shape");
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                ensure(images.matrix()(i, j) == quartics[j].evaluate(gamma2.point(i)), "images" + tag,
                       "entry (" + std::to_string(i) + "," + std::to_string(j) +
                           ") is not the evaluation");
        checks.push_back("images" + tag);

        check_transport(fld, fac, images, gamma5, "transport" + tag);
        checks.push_back("transport" + tag);

        auto quadrics = polys_from_json(fld, 6, 2, need(fac, "quadrics"), "quadrics" + tag);
        ensure(quadrics.size() == 6, "quadrics" + tag, "need dimension six");
        auto qm = coeff_columns(fld, quadrics);
        ensure(qm.rows() == 21 && goppa::rank(qm) == 6, "quadrics" + tag, "dependent basis");
        auto samples = io::rows_from_json(fld, need(fac, "samples"));
        for (const auto& y : samples) {
            ensure(y.size() == 6 && nonzero_vec(y), "quadrics" + tag, "bad sample");
            for (const auto& q : quadrics)
                ensure(q.evaluate(y).is_zero(), "quadrics" + tag, "a quadric misses a sample");
        }
        for (const auto& p : gamma5.points())
            for (const auto& q : quadrics)
                ensure(q.evaluate(p).is_zero(), "quadrics" + tag, "a quadric misses one of the nine");
        checks.push_back("quadrics" + tag);
        quadric_spaces.push_back(std::move(qm));
    }

    for (std::size_t i = 0; i < quadric_spaces.size(); ++i)
        for (std::size_t j = i + 1; j < quadric_spaces.size(); ++j)
            ensure(goppa::rank(goppa::hstack(quadric_spaces[i], quadric_spaces[j])) > 6,
                   "factors_distinct", "factors " + std::to_string(i) + " and " + std::to_string(j) +
                                           " share their quadric space");
    checks.push_back("factors_distinct");
}

json run_verify(const json& rep) {
    if (!rep.is_object()) fail(errc::parse_error, "not a report");
    const json& cmd_j = need(rep, "command");
    if (!cmd_j.is_string()) fail(errc::parse_error, "report \"command\" must be a string");
    const std::string cmd = cmd_j.get<std::string>();
    FieldSpec spec = io::field_from_json(need(rep, "field"));
    const json& inputs = need(rep, "inputs");

    std::vector<std::string> checks;
    ensure(need(inputs, "digest").get<std::string>() ==
               io::digest(json{{"field", rep["field"]}, {"points", need(inputs, "points")}}),
           "inputs_digest", "digest does not match the inputs");
    checks.push_back("inputs_digest");

    goppa::with_field(spec, [&](auto fld) {
        if (cmd == "gale")
            verify_gale(fld, rep, checks);
        else if (cmd == "rnc")
            verify_rnc(fld, rep, checks);
        else if (cmd == "conic5")
            verify_conic5(fld, rep, checks);
        else if (cmd == "pencil9")
            verify_pencil9(fld, rep, checks);
        else if (cmd == "eightp4")
            verify_blowup(fld, rep, checks, 4, 1);
        else if (cmd == "sevenp3")
            verify_blowup(fld, rep, checks, 3, 2);
        else if (cmd == "ci33")
            verify_ci33(fld, rep, checks);
        else if (cmd == "coble9")
            verify_coble9(fld, rep, checks);
        else
            fail(errc::parse_error, "no verifier for command \"" + cmd + "\"");
        return 0;
    });

    json out;
    out["command"] = "verify";
    out["verified_command"] = cmd;
    out["checks"] = checks;
    out["status"] = "ok";
    return out;
}

// ---- input plumbing ----------------------------------------------------------

struct Opt {
    std::string input;
    std::string out;
    std::string field;
    std::string kind = "points";
    std::uint64_t seed = 0;
    std::size_t gen_n = 0;
    std::size_t gen_dim = 0;
    std::size_t samples = 40;
    std::vector<std::size_t> pair{0, 1};
    bool gen = false;
    bool timings = false;
};

struct Input {
    FieldSpec spec;
    json points;
};

Input obtain_input(const Opt& o, bool has_seed, std::size_t gen_n, std::size_t gen_dim,
                   bool pencil_base) {
    if (o.gen) {
        if (!o.input.empty()) fail(errc::parse_error, "--gen and --input are exclusive");
        if (o.field.empty()) fail(errc::parse_error, "--gen needs --field");
        if (!has_seed) fail(errc::parse_error, "--gen needs --seed");
        if (gen_n == 0 || gen_dim == 0) fail(errc::parse_error, "--gen needs --n and --dim here");
        FieldSpec spec = io::field_from_flag(o.field);
        json pts = goppa::with_field(spec, [&](auto fld) {
            if (pencil_base)
                return io::points_to_json(goppa::gen_cubic_pencil_base(fld, o.seed).points);
            return io::points_to_json(goppa::gen_general_points(fld, gen_n, gen_dim, o.seed));
        });
        return Input{spec, std::move(pts)};
    }
    if (o.input.empty()) fail(errc::parse_error, "need --input FILE or --gen");
    auto cfg = io::load_config_file(o.input);
    if (!o.field.empty() && !(io::field_from_flag(o.field) == cfg.field))
        fail(errc::parse_error, "--field does not match the input file");
    return Input{cfg.field, cfg.points};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Gale transforms and Goppa-duality factorizations"};
    app.require_subcommand(1);

    Opt opt;
    std::function<json()> action;

    auto add_common = [&](CLI::App* sub, bool with_gen) {
        sub->add_option("--input", opt.input, "configuration file (JSON)");
        sub->add_option("--out", opt.out, "write the result here instead of stdout");
        sub->add_option("--field", opt.field, "rational | prime:P");
        sub->add_flag("--timings", opt.timings, "include wall-clock timings in the report");
        if (with_gen)
            sub->add_flag("--gen", opt.gen, "generate the input (needs --field and --seed)");
    };

    {
        auto* sub = app.add_subcommand("gale", "Gale transform of a point configuration");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "seed for --gen");
        sub->add_option("--n", opt.gen_n, "point count for --gen");
        sub->add_option("--dim", opt.gen_dim, "ambient projective dimension for --gen");
        sub->callback([&, sub] {
            const bool has_seed = sub->count("--seed") > 0;
            action = [&, has_seed] {
                Input in = obtain_input(opt, has_seed, opt.gen_n, opt.gen_dim, false);
                return goppa::with_field(in.spec,
                                         [&](auto fld) { return run_gale(fld, in.spec, in.points); });
            };
        });
    }
    {
        auto* sub = app.add_subcommand("rnc", "rational normal curve through s+3 points of P^s");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "seed for --gen");
        sub->add_option("--dim", opt.gen_dim, "curve ambient dimension s for --gen");
        sub->callback([&, sub] {
            const bool has_seed = sub->count("--seed") > 0;
            action = [&, has_seed] {
                Input in = obtain_input(opt, has_seed, opt.gen_dim + 3, opt.gen_dim, false);
                return goppa::with_field(in.spec,
                                         [&](auto fld) { return run_rnc(fld, in.spec, in.points); });
            };
        });
    }
    {
        auto* sub = app.add_subcommand("conic5", "the conic through five points of P^2");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "seed for --gen");
        sub->callback([&, sub] {
            const bool has_seed = sub->count("--seed") > 0;
            action = [&, has_seed] {
                Input in = obtain_input(opt, has_seed, 5, 2, false);
                return goppa::with_field(
                    in.spec, [&](auto fld) { return run_conic5(fld, in.spec, in.points); });
            };
        });
    }
    {
        auto* sub = app.add_subcommand("pencil9", "ninth base point of the cubic pencil through eight");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "seed for --gen");
        sub->callback([&, sub] {
            const bool has_seed = sub->count("--seed") > 0;
            action = [&, has_seed] {
                Input in = obtain_input(opt, has_seed, 8, 2, false);
                return goppa::with_field(
                    in.spec, [&](auto fld) { return run_pencil9(fld, in.spec, in.points); });
            };
        });
    }
    {
        auto* sub = app.add_subcommand("eightp4", "factor eight points of P^4 through a blown-up plane");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "certificate search seed")->required();
        sub->callback([&] {
            action = [&] {
                Input in = obtain_input(opt, true, 8, 4, false);
                return goppa::with_field(in.spec, [&](auto fld) {
                    return run_eightp4(fld, in.spec, in.points, opt.seed);
                });
            };
        });
    }
    {
        auto* sub = app.add_subcommand("sevenp3", "factor seven points of P^3 through a blown-up plane");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "certificate search seed")->required();
        sub->add_option("--pair", opt.pair, "cubic pair choice I,J")->delimiter(',')->expected(2);
        sub->callback([&] {
            action = [&] {
                Input in = obtain_input(opt, true, 7, 3, false);
                return goppa::with_field(in.spec, [&](auto fld) {
                    return run_sevenp3(fld, in.spec, in.points, opt.seed,
                                       {opt.pair.at(0), opt.pair.at(1)});
                });
            };
        });
    }
    {
        auto* sub = app.add_subcommand("ci33", "Veronese certificate for a (3,3) base locus");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "certificate search seed")->required();
        sub->callback([&] {
            action = [&] {
                Input in = obtain_input(opt, true, 9, 2, true);
                return goppa::with_field(in.spec, [&](auto fld) {
                    return run_ci33(fld, in.spec, in.points, opt.seed);
                });
            };
        });
    }
    {
        auto* sub = app.add_subcommand("coble9", "the four Veronese factorizations of nine points of P^5");
        add_common(sub, true);
        sub->add_option("--seed", opt.seed, "representative search seed")->required();
        sub->add_option("--samples", opt.samples, "minimum surface samples per factor")
            ->capture_default_str();
        sub->callback([&] {
            action = [&] {
                Input in = obtain_input(opt, true, 9, 5, false);
                if (in.spec.kind != FieldSpec::Kind::prime)
                    fail(errc::field_not_finite, "the Coble pipeline needs a finite field");
                return run_coble9(goppa::PrimeField{in.spec.p}, in.spec, in.points, opt.seed,
                                  opt.samples);
            };
        });
    }
    {
        auto* sub = app.add_subcommand("verify", "re-check every certificate in a report");
        sub->add_option("report", opt.input, "report file (JSON)");
        sub->add_option("--input", opt.input, "report file (JSON)");
        sub->add_option("--out", opt.out, "write the verification summary here");
        sub->add_flag("--timings", opt.timings, "include wall-clock timings");
        sub->callback([&] {
            action = [&] {
                if (opt.input.empty()) fail(errc::parse_error, "verify needs a report file");
                return run_verify(io::read_json_file(opt.input));
            };
        });
    }
    {
        auto* sub = app.add_subcommand("gen", "write a seeded input configuration");
        sub->add_option("--field", opt.field, "rational | prime:P")->required();
        sub->add_option("--seed", opt.seed, "generator seed")->required();
        sub->add_option("--kind", opt.kind, "points | pencil9")->capture_default_str();
        sub->add_option("--n", opt.gen_n, "point count (kind=points)");
        sub->add_option("--dim", opt.gen_dim, "ambient projective dimension (kind=points)");
        sub->add_option("--out", opt.out, "write the configuration here instead of stdout");
        sub->callback([&] {
            action = [&] {
                return run_gen(io::field_from_flag(opt.field), opt.kind, opt.gen_n, opt.gen_dim,
                               opt.seed);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        json result = action();
        if (opt.timings && result.is_object() && result.contains("command")) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            result["timings_ms"] = json{{"total", ms}};
        }
        if (!opt.out.empty())
            io::write_json_file(opt.out, result);
        else
            std::cout << result.dump(2) << "\n";
        return 0;
    } catch (const error& e) {
        json err{{"status", "error"},
                 {"code", goppa::errc_name(e.code())},
                 {"message", e.what()},
                 {"payload", e.payload()}};
        std::cerr << err.dump(2) << "\n";
        return io::exit_code_for(e.code());
    } catch (const json::exception& e) {
        json err{{"status", "error"}, {"code", "ParseError"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err{{"status", "error"}, {"code", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 1;
    }
}
