// The five-point configuration worked end to end: Gale dual on P^1, diagonal
// certificate, the unique conic, and the parametrized curve hitting every
// point.  Pass a and b on the command line to move the fifth point [1:a:b].

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "goppa/curves.hpp"
#include "goppa/field.hpp"
#include "goppa/gale.hpp"

using namespace goppa;

namespace {

std::string row_str(const std::vector<Rational>& r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += " : ";
        s += r[i].to_string();
    }
    return s + "]";
}

}  // namespace

int main(int argc, char** argv) {
    long long a = argc > 1 ? std::atoll(argv[1]) : 2;
    long long b = argc > 2 ? std::atoll(argv[2]) : 3;
    RationalField Q;
    auto pts = PointConfig<Rational>(Matrix<Rational>::from_ints(
        Q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}, {1, a, b}}));

    std::printf("five points of P^2, fifth = [1:%lld:%lld]\n", a, b);
    auto dual = gale_transform(pts).normalized();
    std::puts("gale dual on P^1:");
    for (std::size_t i = 0; i < dual.size(); ++i)
        std::printf("  %zu: %s\n", i, row_str(dual.point(i)).c_str());

    auto chk = is_gale_dual(pts, dual);
    if (!chk.ok()) {
        std::puts("no diagonal certificate");
        return 1;
    }
    std::string d = "D = diag(";
    for (std::size_t i = 0; i < chk.certificate->d.size(); ++i) {
        if (i) d += ", ";
        d += chk.certificate->d[i].to_string();
    }
    std::printf("%s, so B^T D A = 0\n", (d + ")").c_str());

    std::printf("conic through the five: %s = 0\n", conic_through_five(pts).to_string().c_str());

    auto rnc = rnc_through(pts);
    std::printf("curve parameters and images (transport dim %zu):\n", rnc.transport_dim);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto t = rnc.gale_points.point(i);
        std::printf("  %s -> %s\n", row_str(t).c_str(), row_str(rnc_eval(rnc, t)).c_str());
    }
    return 0;
}
