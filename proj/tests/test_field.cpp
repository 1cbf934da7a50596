#include <catch2/catch_amalgamated.hpp>

#include "goppa/field.hpp"
#include "goppa/rng.hpp"

using namespace goppa;

TEST_CASE("rational parsing is canonical") {
    RationalField Q;
    CHECK(Q.parse("3/6").to_string() == "1/2");
    CHECK(Q.parse("007").to_string() == "7");
    CHECK(Q.parse("-0").to_string() == "0");
    CHECK(Q.parse("-10/4").to_string() == "-5/2");
    CHECK(Q.parse("42").to_string() == "42");
    CHECK(Q.parse("123456789012345678901234567890/2").to_string() ==
          "61728394506172839450617283945");

    CHECK_THROWS_MATCHES(Q.parse("1/0"), error, Catch::Matchers::Predicate<error>(
        [](const error& e) { return e.code() == errc::division_by_zero; }));
    for (const char* bad : {"", "abc", "1/-2", "--1", "2/ 3", "1.5", "3 ", "/2", "1/"}) {
        INFO(bad);
        CHECK_THROWS_AS(Q.parse(bad), error);
    }
}

TEST_CASE("rational canonical form invariants") {
    RationalField Q;
    auto rng = seeded_rng(7);
    for (int i = 0; i < 200; ++i) {
        long long a = static_cast<long long>(rng() % 2001) - 1000;
        long long b = static_cast<long long>(rng() % 2000) - 1000;
        if (b == 0) b = 17;
        Rational r{bigint(a), bigint(b)};
        CHECK(r.den() > 0);
        CHECK(boost::multiprecision::gcd(bigint(boost::multiprecision::abs(r.num())), r.den()) == 1);
        CHECK(Q.parse(r.to_string()) == r);  // round trip
    }
}

TEST_CASE("Fp inverse matches brute force over F_7") {
    PrimeField F{7};
    for (std::uint64_t x = 1; x < 7; ++x) {
        std::uint64_t expected = 0;
        for (std::uint64_t y = 1; y < 7; ++y)
            if (x * y % 7 == 1) expected = y;
        CHECK(Fp(x, 7).inv().value() == expected);
    }
    CHECK(Fp(3, 7).inv().value() == 5);
    CHECK_THROWS_AS(F.zero().inv(), error);
}

TEST_CASE("Fp arithmetic near the modulus bound") {
    // largest prime below 2^62 region: use 2^61 - 1 (Mersenne prime)
    std::uint64_t p = (1ull << 61) - 1;
    REQUIRE(is_prime_u64(p));
    PrimeField F{p};
    Fp a = F.from_int(-1);
    CHECK(a.value() == p - 1);
    CHECK((a * a).value() == 1);  // (-1)^2
    Fp b(p - 2, p);
    CHECK((b * b.inv()).value() == 1);
    CHECK((a + F.one()).is_zero());
}

TEST_CASE("Fp parse accepts fraction literals") {
    PrimeField F{11};
    CHECK(F.parse("7").value() == 7);
    CHECK(F.parse("-1").value() == 10);
    CHECK(F.parse("1/2").value() == 6);  // 2*6 = 12 = 1
    CHECK_THROWS_AS(F.parse("1/11"), error);
    CHECK_THROWS_AS(F.parse("x"), error);
}

template <class F>
static void field_axioms(const F& fld, std::uint64_t seed, int trials) {
    auto rng = seeded_rng(seed);
    auto one = fld.one();
    auto zero = fld.zero();
    for (int i = 0; i < trials; ++i) {
        auto a = fld.sample(rng), b = fld.sample(rng), c = fld.sample(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + zero == a);
        CHECK(a * one == a);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK(a * a.inv() == one);
    }
}

TEST_CASE("field axioms hold on random triples") {
    field_axioms(PrimeField{1009}, 42, 1000);
    field_axioms(PrimeField{2}, 43, 50);
    field_axioms(RationalField{}, 44, 1000);
}

TEST_CASE("primality testing is deterministic and correct") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64((1ull << 61) - 1));
    CHECK(is_prime_u64(9223372036854775783ull));  // largest prime < 2^63

    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561));         // Carmichael
    CHECK_FALSE(is_prime_u64(3215031751));  // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(is_prime_u64(3825123056546413051ull));  // spsp to all bases < 24
    CHECK_FALSE(is_prime_u64((1ull << 63) - 1));

    // sieve cross-check on a small window
    for (std::uint64_t n = 2; n < 2000; ++n) {
        bool ref = true;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { ref = false; break; }
        CHECK(is_prime_u64(n) == ref);
    }
}

TEST_CASE("FieldSpec validates the modulus") {
    CHECK(FieldSpec::prime(7).describe() == "GF(7)");
    CHECK(FieldSpec::rationals().describe() == "QQ");
    CHECK_THROWS_MATCHES(FieldSpec::prime(10), error, Catch::Matchers::Predicate<error>(
        [](const error& e) { return e.code() == errc::not_prime; }));
    CHECK_THROWS_AS(FieldSpec::prime(1), error);
    CHECK_THROWS_AS(FieldSpec::prime(1ull << 63), error);

    int visited = with_field(FieldSpec::prime(5), [](auto fld) {
        return fld.finite() ? 1 : 2;
    });
    CHECK(visited == 1);
}
