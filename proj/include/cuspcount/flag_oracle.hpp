#pragma once

/// Independent ground truth for degree one.  The space of (line, plane) flags
/// in P^3 is five dimensional: the Grassmannian of lines is four dimensional
/// and a line lies in a one-parameter pencil of planes.  Intersection numbers
/// against line conditions (sigma_1), point conditions (sigma_2) and plane
/// constraints (a) are classical Schubert calculus; no stable-map machinery
/// is involved, which is what makes this module a genuine oracle.

#include "cuspcount/numeric.hpp"

#include <array>
#include <cstdint>

namespace cuspcount::flag {

// The six Schubert classes of G(2,4) in the fixed order
// {empty, (1), (2), (1,1), (2,1), (2,2)}.
enum Schubert : int {
    kEmpty = 0,
    kSigma1 = 1,
    kSigma2 = 2,
    kSigma11 = 3,
    kSigma21 = 4,
    kSigma22 = 5,
};

namespace detail {
// sigma_lam * sigma_mu in G(2,4) (hard-coded Pieri products; everything
// exceeding the 2x2 box vanishes).  Entry [l][m] lists coefficients over the
// six classes.
inline const std::array<std::array<std::array<int, 6>, 6>, 6>& schubert_products() {
    static const auto table = [] {
        std::array<std::array<std::array<int, 6>, 6>, 6> t{};
        auto set = [&](int l, int m, std::array<int, 6> v) {
            t[l][m] = v;
            t[m][l] = v;
        };
        for (int l = 0; l < 6; ++l) {
            std::array<int, 6> unit{};
            unit[l] = 1;
            set(kEmpty, l, unit);
        }
        set(kSigma1, kSigma1, {0, 0, 1, 1, 0, 0});
        set(kSigma1, kSigma2, {0, 0, 0, 0, 1, 0});
        set(kSigma1, kSigma11, {0, 0, 0, 0, 1, 0});
        set(kSigma1, kSigma21, {0, 0, 0, 0, 0, 1});
        set(kSigma1, kSigma22, {0, 0, 0, 0, 0, 0});
        set(kSigma2, kSigma2, {0, 0, 0, 0, 0, 1});
        set(kSigma2, kSigma11, {0, 0, 0, 0, 0, 0});
        set(kSigma2, kSigma21, {0, 0, 0, 0, 0, 0});
        set(kSigma2, kSigma22, {0, 0, 0, 0, 0, 0});
        set(kSigma11, kSigma11, {0, 0, 0, 0, 0, 1});
        set(kSigma11, kSigma21, {0, 0, 0, 0, 0, 0});
        set(kSigma11, kSigma22, {0, 0, 0, 0, 0, 0});
        set(kSigma21, kSigma21, {0, 0, 0, 0, 0, 0});
        set(kSigma21, kSigma22, {0, 0, 0, 0, 0, 0});
        set(kSigma22, kSigma22, {0, 0, 0, 0, 0, 0});
        return t;
    }();
    return table;
}
}  // namespace detail

// Element of the flag-space ring over the basis {sigma_lam * a^k, k in {0,1}}.
// The plane bundle over a line is a P^1-bundle, giving a^2 = sigma_1 a - sigma_2.
class FlagClass {
public:
    FlagClass() = default;

    static FlagClass one() {
        FlagClass x;
        x.c_[idx(kEmpty, 0)] = 1;
        return x;
    }
    static FlagClass schubert(Schubert lam) {
        FlagClass x;
        x.c_[idx(lam, 0)] = 1;
        return x;
    }
    static FlagClass plane_class() {  // the class a
        FlagClass x;
        x.c_[idx(kEmpty, 1)] = 1;
        return x;
    }

    const Int& coeff(Schubert lam, int k) const { return c_[idx(lam, k)]; }

    friend FlagClass operator*(const FlagClass& x, const FlagClass& y) {
        const auto& prod = detail::schubert_products();
        // raw a-exponent up to 2 before reduction
        std::array<Int, 18> acc{};
        for (int l1 = 0; l1 < 6; ++l1)
            for (int k1 = 0; k1 < 2; ++k1) {
                const Int& v1 = x.c_[idx(static_cast<Schubert>(l1), k1)];
                if (v1 == 0) continue;
                for (int l2 = 0; l2 < 6; ++l2)
                    for (int k2 = 0; k2 < 2; ++k2) {
                        const Int& v2 = y.c_[idx(static_cast<Schubert>(l2), k2)];
                        if (v2 == 0) continue;
                        for (int l3 = 0; l3 < 6; ++l3) {
                            int c = prod[l1][l2][l3];
                            if (c != 0) acc[l3 * 3 + k1 + k2] += v1 * v2 * c;
                        }
                    }
            }
        // reduce a^2 = sigma_1 a - sigma_2
        FlagClass out;
        for (int l = 0; l < 6; ++l) {
            const Int& v = acc[l * 3 + 2];
            if (v == 0) continue;
            for (int l3 = 0; l3 < 6; ++l3) {
                int c1 = prod[l][kSigma1][l3];
                if (c1 != 0) acc[l3 * 3 + 1] += v * c1;
                int c2 = prod[l][kSigma2][l3];
                if (c2 != 0) acc[l3 * 3 + 0] -= v * c2;
            }
        }
        for (int l = 0; l < 6; ++l)
            for (int k = 0; k < 2; ++k) out.c_[idx(static_cast<Schubert>(l), k)] = acc[l * 3 + k];
        return out;
    }

    // Degree-5 integral: the coefficient of sigma_{2,2} * a.
    Int integrate() const { return c_[idx(kSigma22, 1)]; }

private:
    static int idx(Schubert lam, int k) { return static_cast<int>(lam) * 2 + k; }
    std::array<Int, 12> c_{};
};

// N_1(r, s, theta): degree-one planar characteristic numbers by Schubert
// calculus.  Zero off the shell r + 2s + theta = 5 and for theta > 3.
inline Int n1(int r, int s, int theta) {
    if (r < 0 || s < 0 || theta < 0) throw ValidationError("n1: arguments must be nonnegative");
    if (r + 2 * s + theta != 5 || theta > 3) return 0;
    FlagClass x = FlagClass::one();
    for (int k = 0; k < r; ++k) x = x * FlagClass::schubert(kSigma1);
    for (int k = 0; k < s; ++k) x = x * FlagClass::schubert(kSigma2);
    for (int k = 0; k < theta; ++k) x = x * FlagClass::plane_class();
    return x.integrate();
}

}  // namespace cuspcount::flag
