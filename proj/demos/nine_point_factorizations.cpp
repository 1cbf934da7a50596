// Nine general points of P^5 and their four Veronese factorizations: the
// plane model, the square-root classes, and the quadric spaces cutting out
// the four surfaces.  Arguments: prime, seed.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "goppa/curves.hpp"
#include "goppa/elliptic.hpp"
#include "goppa/field.hpp"

using namespace goppa;

namespace {

std::string row_str(const std::vector<Fp>& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ":";
        s += r[i].to_string();
    }
    return s + "]";
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t p = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 101;
    std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
    PrimeField F{p};

    auto gamma5 = gen_general_points(F, 9, 5, seed);
    std::printf("nine general points of P^5 over GF(%llu), seed %llu\n",
                (unsigned long long)p, (unsigned long long)seed);

    std::optional<CobleVeronese<Fp>> built;
    try {
        built = coble_four_veronese(gamma5, seed);
    } catch (const error& e) {
        std::printf("no full count here: %s\n", e.what());
        return 1;
    }
    const CobleVeronese<Fp>& coble = *built;

    std::printf("plane cubic through the Gale transform: %s = 0\n",
                coble.cubic.f.to_string().c_str());
    std::printf("origin %s, target class (6, %s)\n", row_str(coble.cubic.origin).c_str(),
                row_str(coble.target.abel).c_str());

    for (std::size_t k = 0; k < coble.factors.size(); ++k) {
        const auto& f = coble.factors[k];
        std::printf("factorization %zu: class (3, %s)\n", k, row_str(f.cls.abel).c_str());
        std::printf("  triple %s %s %s\n", row_str(f.triple[0]).c_str(),
                    row_str(f.triple[1]).c_str(), row_str(f.triple[2]).c_str());
        std::printf("  conics dim %zu, quartics dim %zu, transport dim %zu\n",
                    f.conics.dim(), f.quartics.dim(), f.transport_dim);
        std::printf("  %zu surface samples cut out by %zu quadrics of P^5\n",
                    f.samples.size(), f.quadrics.dim());
    }
    std::printf("four factorizations: %s\n", coble.factors.size() == 4 ? "yes" : "NO");
    return 0;
}
