#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "goppa/elliptic.hpp"
#include "goppa/field.hpp"
#include "goppa/rng.hpp"

using namespace goppa;

namespace {

auto code_is(errc c) {
    return Catch::Matchers::Predicate<error>(
        [c](const error& e) { return e.code() == c; });
}

auto code_and_payload(errc c, long long pl) {
    return Catch::Matchers::Predicate<error>(
        [c, pl](const error& e) { return e.code() == c && e.payload() == pl; });
}

/// c3*x^3 + cxz*x*z^2 + cz*z^3 - y^2*z, the short Weierstrass shape.
template <class F>
HomogPoly<typename F::element> weier(const F& fld, long long c3, long long cxz, long long cz) {
    HomogPoly<typename F::element> f(fld, 3, 3);
    f.coeff(Exponent{3, 0, 0}) = fld.from_int(c3);
    f.coeff(Exponent{1, 0, 2}) = fld.from_int(cxz);
    f.coeff(Exponent{0, 0, 3}) = fld.from_int(cz);
    f.coeff(Exponent{0, 2, 1}) = fld.from_int(-1);
    return f;
}

std::vector<Fp> pt(const PrimeField& F, long long a, long long b, long long c) {
    return {F.from_int(a), F.from_int(b), F.from_int(c)};
}

template <class K>
std::vector<std::vector<K>> point_set(std::vector<std::vector<K>> pts) {
    for (auto& p : pts) p = normalize_scale(p);
    std::sort(pts.begin(), pts.end(), lex_less<K>);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

bool contains_poly(const Subspace<Fp>& sys, const HomogPoly<Fp>& h) {
    Matrix<Fp> col(h.field(), sys.basis.rows(), 1);
    for (std::size_t i = 0; i < h.coeffs().size(); ++i) col(i, 0) = h[i];
    return rank(hstack(sys.basis, col)) == sys.dim();
}

}  // namespace

TEST_CASE("cubic construction pins a deterministic origin") {
    PrimeField F7{7}, F5{5};
    CHECK(make_plane_cubic(weier(F7, 1, -1, 0)).origin == pt(F7, 1, 0, 1));
    CHECK(make_plane_cubic(weier(F7, 1, 1, 0)).origin == pt(F7, 1, 1, 3));
    CHECK(make_plane_cubic(weier(F5, 1, 1, 0)).origin == pt(F5, 1, 0, 2));
    CHECK(make_plane_cubic(weier(F5, 1, 1, 1)).origin == pt(F5, 1, 2, 2));

    // explicit origins are normalized and must sit on the curve
    auto C = make_plane_cubic(weier(F7, 1, -1, 0), pt(F7, 0, 3, 0));
    CHECK(C.origin == pt(F7, 0, 1, 0));
    CHECK_THROWS_MATCHES(make_plane_cubic(weier(F7, 1, -1, 0), pt(F7, 1, 1, 1)), error,
                         code_is(errc::degenerate));

    PrimeField F2{2};
    CHECK_THROWS_MATCHES(make_plane_cubic(weier(F2, 1, 1, 1)), error,
                         code_is(errc::field_too_small));
    // cuspidal: y^2 z = x^3 is singular at [0:0:1]
    CHECK_THROWS_MATCHES(make_plane_cubic(weier(F7, 1, 0, 0)), error,
                         code_is(errc::degenerate));
    HomogPoly<Fp> conic(F7, 2, 3);
    conic.coeff(Exponent{2, 0, 0}) = F7.one();
    CHECK_THROWS_MATCHES(make_plane_cubic(conic), error, code_is(errc::dimension_mismatch));
}

TEST_CASE("third intersection agrees with brute-force line scans") {
    PrimeField F{7};
    auto C = make_plane_cubic(weier(F, 1, -1, 0));
    auto pts = enumerate_points(C);
    REQUIRE(pts.size() == 8);
    auto lsum = third_intersection(C, C.origin, C.origin);

    for (const auto& P : pts) {
        for (const auto& Q : pts) {
            auto T = third_intersection(C, P, Q);
            CHECK(C.f.evaluate(T).is_zero());

            // every curve point on the spanned line, by direct scan
            std::vector<std::vector<Fp>> on_line;
            if (P == Q) {
                for (const auto& R : pts) {
                    Fp s = F.zero();
                    for (unsigned v = 0; v < 3; ++v) s += C.f.partial(v).evaluate(P) * R[v];
                    if (s.is_zero()) on_line.push_back(R);
                }
            } else {
                for (const auto& R : pts) {
                    Matrix<Fp> m(F, 3, 3);
                    for (unsigned v = 0; v < 3; ++v) {
                        m(0, v) = P[v];
                        m(1, v) = Q[v];
                        m(2, v) = R[v];
                    }
                    if (det(m).is_zero()) on_line.push_back(R);
                }
            }
            CHECK(point_set(on_line) == point_set(std::vector<std::vector<Fp>>{P, Q, T}));

            // every line section represents the same divisor class
            CHECK(abel_sum(C, {P, Q, T}).abel == lsum);
        }
    }

    // [0:1:0] is a flex: its tangent meets the curve three times there
    auto flex = pt(F, 0, 1, 0);
    CHECK(third_intersection(C, flex, flex) == flex);

    CHECK_THROWS_MATCHES(third_intersection(C, pt(F, 1, 1, 1), flex), error,
                         code_is(errc::degenerate));
    CHECK_THROWS_MATCHES(third_intersection(C, {F.one(), F.zero()}, flex), error,
                         code_is(errc::dimension_mismatch));
}

TEST_CASE("chord-tangent group axioms") {
    PrimeField F7{7};
    auto C7 = make_plane_cubic(weier(F7, 1, -1, 0));
    auto p7 = enumerate_points(C7);
    for (const auto& P : p7) {
        CHECK(add(C7, C7.origin, P) == P);
        CHECK(add(C7, P, neg(C7, P)) == C7.origin);
        for (const auto& Q : p7) {
            CHECK(add(C7, P, Q) == add(C7, Q, P));
            // full associativity over the 8-point curve
            for (const auto& R : p7)
                CHECK(add(C7, add(C7, P, Q), R) == add(C7, P, add(C7, Q, R)));
        }
    }

    PrimeField F101{101};
    auto C = make_plane_cubic(weier(F101, 1, -1, 0));
    auto pts = enumerate_points(C);
    REQUIRE(pts.size() == 104);
    auto rng = seeded_rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& P = pts[draw(rng, pts.size())];
        const auto& Q = pts[draw(rng, pts.size())];
        const auto& R = pts[draw(rng, pts.size())];
        CHECK(add(C, add(C, P, Q), R) == add(C, P, add(C, Q, R)));
        CHECK(add(C, P, Q) == add(C, Q, P));
        CHECK(add(C, P, neg(C, P)) == C.origin);
        CHECK(add(C, C.origin, P) == P);
    }

    // scalar multiples and Lagrange over the curves of known order
    for (const auto& P : p7) CHECK(mul(C7, 8, P) == C7.origin);
    PrimeField F5{5};
    auto C5 = make_plane_cubic(weier(F5, 1, 1, 0));
    for (const auto& P : enumerate_points(C5)) CHECK(mul(C5, 4, P) == C5.origin);
    auto C5b = make_plane_cubic(weier(F5, 1, 1, 1));
    for (const auto& P : enumerate_points(C5b)) CHECK(mul(C5b, 9, P) == C5b.origin);
    for (int trial = 0; trial < 5; ++trial) {
        const auto& P = pts[draw(rng, pts.size())];
        CHECK(mul(C, 104, P) == C.origin);
        CHECK(mul(C, 0, P) == C.origin);
        CHECK(mul(C, 1, P) == normalize_scale(P));
        CHECK(mul(C, -3, P) == neg(C, mul(C, 3, P)));
    }
}

TEST_CASE("point enumeration is exact") {
    PrimeField F5{5};
    auto C5 = make_plane_cubic(weier(F5, 1, 1, 0));
    std::vector<std::vector<Fp>> expected = {pt(F5, 1, 0, 2), pt(F5, 1, 0, 3),
                                             pt(F5, 0, 1, 0), pt(F5, 0, 0, 1)};
    CHECK(enumerate_points(C5) == expected);

    for (auto [p, c3, cxz, cz, n] :
         {std::tuple<long long, long long, long long, long long, std::size_t>{7, 1, -1, 0, 8},
          {7, 1, 1, 0, 8},
          {5, 1, 1, 1, 9},
          {101, 1, -1, 0, 104}}) {
        PrimeField F{static_cast<std::uint64_t>(p)};
        auto C = make_plane_cubic(weier(F, c3, cxz, cz));
        auto pts = enumerate_points(C);
        CHECK(pts.size() == n);
        CHECK(point_set(pts).size() == n);
        for (const auto& q : pts) CHECK(C.f.evaluate(q).is_zero());
    }

    PrimeField big{10007};
    auto Cbig = make_plane_cubic(weier(big, 1, -1, 0), pt(big, 0, 1, 0));
    CHECK_THROWS_MATCHES(enumerate_points(Cbig), error,
                         code_is(errc::retry_budget_exhausted));

    RationalField Q;
    auto CQ = make_plane_cubic(weier(Q, 1, -1, 0), {Q.zero(), Q.one(), Q.zero()});
    CHECK_THROWS_MATCHES(enumerate_points(CQ), error, code_is(errc::field_not_finite));
}

TEST_CASE("rational two-torsion comes in sizes 1, 2 and 4") {
    PrimeField F7{7}, F5{5};
    auto t1 = two_torsion(make_plane_cubic(weier(F5, 1, 1, 1)));
    REQUIRE(t1.size() == 1);

    auto C2 = make_plane_cubic(weier(F7, 1, 1, 0));
    auto t2 = two_torsion(C2);
    CHECK(t2.size() == 2);

    auto C4 = make_plane_cubic(weier(F7, 1, -1, 0));
    auto t4 = two_torsion(C4);
    REQUIRE(t4.size() == 4);
    // closed under the group law
    for (const auto& s : t4)
        for (const auto& t : t4) {
            auto sum = add(C4, s, t);
            CHECK(std::find(t4.begin(), t4.end(), sum) != t4.end());
        }

    // the four-point curve is pure two-torsion
    auto C5 = make_plane_cubic(weier(F5, 1, 1, 0));
    CHECK(point_set(two_torsion(C5)) == point_set(enumerate_points(C5)));
}

TEST_CASE("divisor classes of line and cubic sections") {
    PrimeField F{101};
    auto C = make_plane_cubic(weier(F, 1, -1, 0));
    auto pts = enumerate_points(C);
    auto lsum = third_intersection(C, C.origin, C.origin);
    CHECK(lsum == pt(F, 0, 1, 0));

    auto empty = abel_sum(C, {});
    CHECK(empty.degree == 0);
    CHECK(empty.abel == C.origin);

    auto rng = seeded_rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const auto& P = pts[draw(rng, pts.size())];
        const auto& Q = pts[draw(rng, pts.size())];
        auto T = third_intersection(C, P, Q);
        auto cls = abel_sum(C, {P, Q, T});
        CHECK(cls.degree == 3);
        CHECK(cls.abel == lsum);
    }

    // eight curve points determine a pencil of cubics; the nine base points
    // form a cubic section, whose class is three line classes
    for (std::uint64_t seed : {1, 9}) {
        auto draw_rng = seeded_rng(seed);
        std::vector<std::vector<Fp>> eight;
        while (eight.size() < 8) {
            auto q = pts[draw(draw_rng, pts.size())];
            if (std::find(eight.begin(), eight.end(), q) == eight.end())
                eight.push_back(q);
        }
        auto nin = cubic_pencil_ninth(PointConfig<Fp>::from_points(F, eight));
        CHECK(C.f.evaluate(nin.ninth).is_zero());
        auto nine = eight;
        nine.push_back(nin.ninth);
        CHECK(abel_sum(C, nine).abel == mul(C, 3, lsum));
    }
}

TEST_CASE("square roots match brute-force halving") {
    PrimeField F7{7};
    auto C = make_plane_cubic(weier(F7, 1, -1, 0));
    auto pts = enumerate_points(C);
    int divisible = 0;
    for (const auto& t : pts) {
        std::vector<std::vector<Fp>> brute;
        for (const auto& q : pts)
            if (mul(C, 2, q) == t) brute.push_back(q);
        if (brute.empty()) {
            CHECK_THROWS_MATCHES(square_roots(C, DivisorClass<Fp>{6, t}), error,
                                 code_is(errc::no_solution));
            continue;
        }
        ++divisible;
        auto roots = square_roots(C, DivisorClass<Fp>{6, t});
        std::vector<std::vector<Fp>> got;
        for (const auto& cl : roots) {
            CHECK(cl.degree == 3);
            got.push_back(cl.abel);
        }
        CHECK(point_set(got) == point_set(brute));
    }
    // E = Z/2 x Z/4: the doubling image has index four
    CHECK(divisible == 2);

    PrimeField F5{5};
    auto C5 = make_plane_cubic(weier(F5, 1, 1, 0));
    auto full = square_roots(C5, DivisorClass<Fp>{6, C5.origin});
    REQUIRE(full.size() == 4);
    std::vector<std::vector<Fp>> abels;
    for (const auto& cl : full) abels.push_back(cl.abel);
    CHECK(point_set(abels) == point_set(enumerate_points(C5)));
    CHECK_THROWS_MATCHES(square_roots(C5, DivisorClass<Fp>{6, pt(F5, 1, 0, 3)}), error,
                         code_is(errc::no_solution));
    CHECK_THROWS_MATCHES(square_roots(C5, DivisorClass<Fp>{5, C5.origin}), error,
                         code_is(errc::dimension_mismatch));

    PrimeField F101{101};
    auto C101 = make_plane_cubic(weier(F101, 1, -1, 0));
    auto p101 = enumerate_points(C101);
    auto target = DivisorClass<Fp>{6, mul(C101, 2, p101[10])};
    auto roots = square_roots(C101, target);
    CHECK(roots.size() == 4);
    for (const auto& cl : roots) CHECK(mul(C101, 2, cl.abel) == target.abel);
}

TEST_CASE("representative triples realize a degree-three class") {
    PrimeField F{101};
    auto C = make_plane_cubic(weier(F, 1, -1, 0));
    auto pts = enumerate_points(C);
    DivisorClass<Fp> cls{3, pts[7]};

    auto triple = representative_triple(C, cls, {}, 5);
    REQUIRE(triple.size() == 3);
    Matrix<Fp> m(F, 3, 3);
    for (unsigned v = 0; v < 3; ++v)
        for (std::size_t i = 0; i < 3; ++i) m(i, v) = triple[i][v];
    CHECK(!det(m).is_zero());
    for (const auto& r : triple) CHECK(C.f.evaluate(r).is_zero());
    CHECK(abel_sum(C, triple).abel == normalize_scale(cls.abel));

    // deterministic in the seed, and the avoid list is honored
    CHECK(representative_triple(C, cls, {}, 5) == triple);
    auto other = representative_triple(C, cls, {triple[0]}, 5);
    CHECK(abel_sum(C, other).abel == normalize_scale(cls.abel));
    for (const auto& r : other) CHECK(r != triple[0]);
    auto reseeded = representative_triple(C, cls, {}, 6);
    CHECK(abel_sum(C, reseeded).abel == normalize_scale(cls.abel));

    CHECK_THROWS_MATCHES(representative_triple(C, DivisorClass<Fp>{4, pts[7]}, {}, 5), error,
                         code_is(errc::dimension_mismatch));

    PrimeField F5{5};
    auto C5 = make_plane_cubic(weier(F5, 1, 1, 0));
    CHECK_THROWS_MATCHES(
        representative_triple(C5, DivisorClass<Fp>{3, C5.origin}, enumerate_points(C5), 1),
        error, code_is(errc::retry_budget_exhausted));
}

TEST_CASE("nodal quintics exist exactly for square-root classes") {
    auto run = [](std::uint64_t p, std::uint64_t seed, std::size_t expect_roots) {
        PrimeField F{p};
        auto g5 = gen_general_points(F, 9, 5, seed);
        auto coble = coble_four_veronese(g5, seed, 40, false);
        REQUIRE(coble.factors.size() == expect_roots);

        std::vector<std::vector<Fp>> root_abels;
        for (const auto& fac : coble.factors) {
            root_abels.push_back(normalize_scale(fac.cls.abel));
            auto rep = quintic_node_criterion(coble.gamma2, coble.cubic, fac.triple);
            CHECK(rep.dim == 4);
            CHECK(rep.irreducible_found);
        }

        int used = 0;
        for (const auto& q : enumerate_points(coble.cubic)) {
            if (used >= 12) break;
            if (std::find(root_abels.begin(), root_abels.end(), q) != root_abels.end())
                continue;
            auto triple = representative_triple(coble.cubic, DivisorClass<Fp>{3, q},
                                                coble.gamma2.points(), 900 + used);
            auto rep = quintic_node_criterion(coble.gamma2, coble.cubic, triple);
            CHECK(rep.dim == 3);
            CHECK(!rep.irreducible_found);
            ++used;
        }
        CHECK(used == 12);
        return coble;
    };
    auto c37 = run(37, 2, 1);
    run(101, 1, 4);

    // cubic times a conic through R always sits in the node-quintic system
    const auto& fac = c37.factors[0];
    PrimeField F{37};
    std::vector<BasePoint<Fp>> base;
    for (const auto& p : c37.gamma2.points()) base.push_back({p, 1});
    for (const auto& r : fac.triple) base.push_back({r, 2});
    auto sys = vanishing_system(F, 5, base, 3);
    REQUIRE(sys.dim() == 4);
    for (const auto& c : system_polys(F, 2, 3, fac.conics))
        CHECK(contains_poly(sys, c37.cubic.f * c));

    // guards
    auto pts = enumerate_points(c37.cubic);
    auto nine = c37.gamma2.points();
    auto eight = PointConfig<Fp>::from_points(
        F, std::vector<std::vector<Fp>>(nine.begin(), nine.begin() + 8));
    CHECK_THROWS_MATCHES(quintic_node_criterion(eight, c37.cubic, fac.triple), error,
                         code_is(errc::dimension_mismatch));
    CHECK_THROWS_MATCHES(
        quintic_node_criterion(c37.gamma2, c37.cubic, {fac.triple[0], fac.triple[1]}), error,
        code_is(errc::dimension_mismatch));
    std::vector<Fp> off = pt(F, 1, 0, 0);
    if (c37.cubic.f.evaluate(off).is_zero()) off = pt(F, 1, 1, 0);
    REQUIRE(!c37.cubic.f.evaluate(off).is_zero());
    CHECK_THROWS_MATCHES(
        quintic_node_criterion(c37.gamma2, c37.cubic, {off, pts[0], pts[1]}), error,
        code_is(errc::degenerate));
    CHECK_THROWS_MATCHES(quintic_node_criterion(c37.gamma2, c37.cubic,
                                                {c37.gamma2.point(0), pts[0], pts[1]}),
                         error, code_is(errc::degenerate));
}

TEST_CASE("coble pipeline: four Veronese factorizations") {
    PrimeField F{101};
    auto g5 = gen_general_points(F, 9, 5, 1);
    auto coble = coble_four_veronese(g5, 1);

    CHECK(coble.gamma2.size() == 9);
    CHECK(coble.gamma2.dim() == 2);
    CHECK(coble.gamma2.pairwise_distinct());
    CHECK(coble.target.degree == 6);
    REQUIRE(coble.factors.size() == 4);

    for (const auto& fac : coble.factors) {
        CHECK(fac.cls.degree == 3);
        CHECK(fac.conics.dim() == 3);
        CHECK(fac.quartics.dim() == 6);
        CHECK(fac.images.size() == 9);
        CHECK(fac.images.dim() == 5);
        CHECK(fac.transport_dim == 1);
        CHECK(fac.samples.size() >= 40);
        CHECK(fac.quadrics.dim() == 6);
        CHECK(fac.quadrics.ambient == 21);

        // triple: on the cubic, non-collinear, sums to the class
        Matrix<Fp> m(F, 3, 3);
        for (unsigned v = 0; v < 3; ++v)
            for (std::size_t i = 0; i < 3; ++i) m(i, v) = fac.triple[i][v];
        CHECK(!det(m).is_zero());
        for (const auto& r : fac.triple) CHECK(coble.cubic.f.evaluate(r).is_zero());
        CHECK(abel_sum(coble.cubic, fac.triple).abel == normalize_scale(fac.cls.abel));
        CHECK(mul(coble.cubic, 2, fac.cls.abel) == normalize_scale(coble.target.abel));

        // the quadrics vanish on the nine input points themselves
        for (const auto& q : system_polys(F, 2, 6, fac.quadrics))
            for (const auto& p : g5.points()) CHECK(q.evaluate(p).is_zero());
    }

    // conic products span the node quartics (factor 0, independent recheck)
    {
        const auto& fac = coble.factors[0];
        auto cpolys = system_polys(F, 2, 3, fac.conics);
        Matrix<Fp> products(F, monomial_count(4, 3), 6);
        std::size_t col = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j, ++col) {
                auto prod = cpolys[i] * cpolys[j];
                for (std::size_t row = 0; row < prod.coeffs().size(); ++row)
                    products(row, col) = prod[row];
            }
        CHECK(same_subspace(image(products), fac.quartics));
    }

    // the four quadric spaces are pairwise distinct
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            CHECK(!same_subspace(coble.factors[i].quadrics, coble.factors[j].quadrics));

    // rerun: everything is reproduced verbatim
    auto again = coble_four_veronese(g5, 1);
    REQUIRE(again.factors.size() == 4);
    CHECK(again.target.abel == coble.target.abel);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(again.factors[k].triple == coble.factors[k].triple);
        CHECK(again.factors[k].quadrics.basis == coble.factors[k].quadrics.basis);
    }

    // a different triple of the same class gives the same Veronese
    auto indep = coble_four_veronese(g5, 777);
    bool some_triple_differs = false;
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(indep.factors[k].cls.abel == coble.factors[k].cls.abel);
        if (indep.factors[k].triple != coble.factors[k].triple) some_triple_differs = true;
        CHECK(same_subspace(indep.factors[k].quadrics, coble.factors[k].quadrics));
    }
    CHECK(some_triple_differs);
}

TEST_CASE("coble pipeline across fields and failure modes") {
    for (auto [p, seed] : {std::pair<std::uint64_t, std::uint64_t>{101, 10}, {113, 4}}) {
        PrimeField F{p};
        auto coble = coble_four_veronese(gen_general_points(F, 9, 5, seed), seed);
        REQUIRE(coble.factors.size() == 4);
        for (const auto& fac : coble.factors) {
            CHECK(fac.quartics.dim() == 6);
            CHECK(fac.transport_dim == 1);
            CHECK(fac.quadrics.dim() == 6);
        }
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                CHECK(!same_subspace(coble.factors[i].quadrics, coble.factors[j].quadrics));
    }

    // partial rational two-torsion: refuse by default, honest subset on request
    PrimeField F{101};
    auto g3 = gen_general_points(F, 9, 5, 3);
    CHECK_THROWS_MATCHES(coble_four_veronese(g3, 3), error,
                         code_and_payload(errc::partial_torsion, 1));
    auto partial1 = coble_four_veronese(g3, 3, 40, false);
    REQUIRE(partial1.factors.size() == 1);
    CHECK(partial1.factors[0].quadrics.dim() == 6);

    auto g5 = gen_general_points(F, 9, 5, 5);
    CHECK_THROWS_MATCHES(coble_four_veronese(g5, 5), error,
                         code_and_payload(errc::partial_torsion, 2));
    auto partial2 = coble_four_veronese(g5, 5, 40, false);
    REQUIRE(partial2.factors.size() == 2);
    CHECK(!same_subspace(partial2.factors[0].quadrics, partial2.factors[1].quadrics));

    // nine points whose Gale transform lies on a pencil of cubics
    auto base = gen_cubic_pencil_base(F, 5);
    auto bad5 = gale_transform(PointConfig<Fp>::from_points(F, base.points));
    CHECK_THROWS_MATCHES(coble_four_veronese(bad5, 1), error,
                         code_is(errc::cubic_not_unique));

    CHECK_THROWS_MATCHES(coble_four_veronese(gen_general_points(F, 8, 4, 1), 1), error,
                         code_is(errc::dimension_mismatch));
    CHECK_THROWS_MATCHES(coble_four_veronese(gen_general_points(PrimeField{7}, 9, 5, 1), 1),
                         error, code_is(errc::field_too_small));
}

TEST_CASE("all factorizations restrict to the one sextic through the nine") {
    PrimeField F{101};
    auto coble = coble_four_veronese(gen_general_points(F, 9, 5, 1), 1);
    for (auto [k, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 2}, {2, 3}, {3, 0}}) {
        auto chk = two_sextics_veronese(coble, k, j);
        CHECK(chk.samples_used == 117);
        CHECK(chk.on_own);
        CHECK(chk.on_other);
        CHECK(chk.surfaces_distinct);
    }

    PrimeField F113{113};
    auto c113 = coble_four_veronese(gen_general_points(F113, 9, 5, 4), 4);
    auto chk = two_sextics_veronese(c113, 0, 1);
    CHECK(chk.samples_used == 125);
    CHECK(chk.on_own);
    CHECK(chk.on_other);
    CHECK(chk.surfaces_distinct);

    CHECK_THROWS_MATCHES(two_sextics_veronese(coble, 1, 1), error,
                         code_is(errc::dimension_mismatch));
    CHECK_THROWS_MATCHES(two_sextics_veronese(coble, 0, 7), error,
                         code_is(errc::dimension_mismatch));
    CHECK_THROWS_MATCHES(two_sextics_veronese(coble, 0, 1, 1000), error,
                         code_is(errc::too_few_points));
}
