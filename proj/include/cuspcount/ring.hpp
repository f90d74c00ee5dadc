#pragma once

/// Cohomology ring of the incidence five-fold S = {([eta], q) : eta(q) = 0}
/// inside P^3-dual x P^3.  S is the projectivization of the rank-three kernel
/// bundle over P^3-dual, which fixes the presentation
///
///     Z[a, H] / (a^4,  H^3 - a H^2 + a^2 H - a^3)
///
/// with a the hyperplane class of P^3-dual and H the one of P^3.  Classes are
/// stored over the 12-monomial basis a^i H^j (i <= 3, j <= 2) with exact
/// integer coefficients; the fundamental integral is normalized by
/// integrate(a^3 H^2) = 1 (a^3 cuts a single plane fiber P^2, H^2 its point).

#include "cuspcount/numeric.hpp"

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cuspcount::ring {

inline constexpr int kMaxA = 3;
inline constexpr int kMaxH = 2;
inline constexpr int kBasisSize = 12;
inline constexpr int kTopDegree = 5;

// Basis monomial a^i H^j.
struct Mono {
    std::int8_t i = 0;
    std::int8_t j = 0;

    int degree() const { return i + j; }
    int index() const { return i * (kMaxH + 1) + j; }

    friend bool operator==(Mono a, Mono b) { return a.i == b.i && a.j == b.j; }
    // Canonical order used for insertion multisets: by degree, then exponents.
    friend bool operator<(Mono a, Mono b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }

    std::string to_string() const {
        std::string s;
        if (i == 0 && j == 0) return "1";
        if (i >= 1) s += (i == 1) ? "a" : "a^" + std::to_string(i);
        if (j >= 1) s += (j == 1) ? "H" : "H^" + std::to_string(j);
        return s;
    }
};

inline const std::array<Mono, kBasisSize>& basis() {
    static const std::array<Mono, kBasisSize> b = [] {
        std::array<Mono, kBasisSize> out{};
        for (std::int8_t i = 0; i <= kMaxA; ++i)
            for (std::int8_t j = 0; j <= kMaxH; ++j) out[i * (kMaxH + 1) + j] = Mono{i, j};
        return out;
    }();
    return b;
}

// One term of an unreduced integer polynomial in a and H.
struct PolyTerm {
    int a_pow = 0;
    int h_pow = 0;
    Int coeff = 1;
};

class RingClass {
public:
    RingClass() = default;

    static RingClass zero() { return RingClass(); }
    static RingClass one() { return monomial(Mono{0, 0}); }
    static RingClass monomial(Mono m, Int coeff = 1) {
        RingClass x;
        x.c_[m.index()] = std::move(coeff);
        return x;
    }
    static RingClass generator_a() { return monomial(Mono{1, 0}); }
    static RingClass generator_h() { return monomial(Mono{0, 1}); }

    const Int& coeff(Mono m) const { return c_[m.index()]; }
    Int& coeff(Mono m) { return c_[m.index()]; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    RingClass& operator+=(const RingClass& o) {
        for (int k = 0; k < kBasisSize; ++k) c_[k] += o.c_[k];
        return *this;
    }
    RingClass& operator-=(const RingClass& o) {
        for (int k = 0; k < kBasisSize; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    RingClass& operator*=(const Int& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend RingClass operator+(RingClass a, const RingClass& b) { return a += b; }
    friend RingClass operator-(RingClass a, const RingClass& b) { return a -= b; }
    friend RingClass operator*(RingClass a, const Int& s) { return a *= s; }
    friend RingClass operator*(const Int& s, RingClass a) { return a *= s; }
    friend bool operator==(const RingClass& a, const RingClass& b) { return a.c_ == b.c_; }

    RingClass degree_part(int k) const {
        RingClass out;
        for (Mono m : basis())
            if (m.degree() == k) out.c_[m.index()] = c_[m.index()];
        return out;
    }

    bool is_homogeneous(int* degree_out = nullptr) const {
        int d = -1;
        for (Mono m : basis()) {
            if (c_[m.index()] == 0) continue;
            if (d == -1)
                d = m.degree();
            else if (d != m.degree())
                return false;
        }
        if (degree_out) *degree_out = d;  // -1 for the zero class
        return true;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (Mono m : basis()) {
            const Int& v = c_[m.index()];
            if (v == 0) continue;
            if (!first) os << (v > 0 ? " + " : " - ");
            else if (v < 0) os << "-";
            Int av = abs(v);
            if (av != 1 || m.degree() == 0) os << av.str() << (m.degree() > 0 ? "*" : "");
            if (m.degree() > 0) os << m.to_string();
            first = false;
        }
        return first ? "0" : os.str();
    }

private:
    std::array<Int, kBasisSize> c_{};
};

namespace detail {
// Rewrites a^i H^j into the basis: a^4 = 0 and H^3 = a H^2 - a^2 H + a^3.
inline void accumulate_reduced(int i, int j, const Int& coeff, RingClass& acc) {
    if (coeff == 0 || i > kMaxA || i < 0 || j < 0) return;
    if (j <= kMaxH) {
        acc.coeff(Mono{static_cast<std::int8_t>(i), static_cast<std::int8_t>(j)}) += coeff;
        return;
    }
    accumulate_reduced(i + 1, j - 1, coeff, acc);
    accumulate_reduced(i + 2, j - 2, -coeff, acc);
    accumulate_reduced(i + 3, j - 3, coeff, acc);
}
}  // namespace detail

inline RingClass reduce(const std::vector<PolyTerm>& poly) {
    RingClass out;
    for (const auto& t : poly) detail::accumulate_reduced(t.a_pow, t.h_pow, t.coeff, out);
    return out;
}

inline RingClass mul(const RingClass& x, const RingClass& y) {
    RingClass out;
    for (Mono m : basis()) {
        if (x.coeff(m) == 0) continue;
        for (Mono n : basis()) {
            if (y.coeff(n) == 0) continue;
            detail::accumulate_reduced(m.i + n.i, m.j + n.j, x.coeff(m) * y.coeff(n), out);
        }
    }
    return out;
}

inline RingClass operator*(const RingClass& x, const RingClass& y) { return mul(x, y); }

// Pairing against the fundamental class of the five-fold S.
inline Int integrate(const RingClass& x) { return x.coeff(Mono{3, 2}); }

// Chern classes of the rank-two bundle W of tangent planes along the fibers:
// the graded pieces of (1+H)^4 / (1+a+H) in degrees one and two.
inline std::pair<RingClass, RingClass> chern_w() {
    RingClass numerator =
        reduce({{0, 0, 1}, {0, 1, 4}, {0, 2, 6}});  // (1+H)^4 truncated to degree 2
    RingClass u = RingClass::generator_a() + RingClass::generator_h();
    RingClass inverse = RingClass::one() - u + mul(u, u);  // series inverse mod degree 3
    RingClass total = mul(numerator, inverse);
    return {total.degree_part(1), total.degree_part(2)};
}

using PairingMatrix = std::array<std::array<Int, kBasisSize>, kBasisSize>;

inline const PairingMatrix& pairing_matrix() {
    static const PairingMatrix g = [] {
        PairingMatrix out;
        for (Mono e : basis())
            for (Mono f : basis())
                out[e.index()][f.index()] =
                    integrate(mul(RingClass::monomial(e), RingClass::monomial(f)));
        return out;
    }();
    return g;
}

namespace detail {
// Exact inverse of the pairing matrix.  The pairing is unimodular for this
// presentation, so the inverse is integral; anything else means the reduction
// rules are broken and we fail loudly.
inline const std::array<std::array<Int, kBasisSize>, kBasisSize>& pairing_inverse() {
    static const auto inv = [] {
        const PairingMatrix& g = pairing_matrix();
        constexpr int n = kBasisSize;
        std::array<std::array<Rat, 2 * n>, n> work{};
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) work[r][c] = Rat(g[r][c]);
            work[r][n + r] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (work[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw EngineError("pairing matrix is singular: reduction-rule bug");
            std::swap(work[col], work[piv]);
            Rat p = work[col][col];
            for (auto& v : work[col]) v /= p;
            for (int r = 0; r < n; ++r) {
                if (r == col || work[r][col] == 0) continue;
                Rat f = work[r][col];
                for (int c = 0; c < 2 * n; ++c) work[r][c] -= f * work[col][c];
            }
        }
        std::array<std::array<Int, kBasisSize>, kBasisSize> out;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                out[r][c] = require_integer(work[r][n + c], "pairing inverse entry");
        return out;
    }();
    return inv;
}
}  // namespace detail

// The class dual to a basis monomial under the Poincare pairing:
// integrate(poincare_dual(e) * T_f) = delta_{ef}.
inline const RingClass& poincare_dual(Mono e) {
    static const std::array<RingClass, kBasisSize> duals = [] {
        const auto& inv = detail::pairing_inverse();
        std::array<RingClass, kBasisSize> out;
        for (Mono m : basis()) {
            RingClass d;
            for (Mono f : basis())
                if (inv[m.index()][f.index()] != 0)
                    d += RingClass::monomial(f, inv[m.index()][f.index()]);
            out[m.index()] = d;
        }
        return out;
    }();
    return duals[e.index()];
}

// Stable fingerprint of the presentation (basis, rewrite rules, pairing).
// Caches written under a different presentation must be rejected.
inline const std::string& presentation_fingerprint() {
    static const std::string fp = [] {
        std::ostringstream os;
        os << "basis:a^iH^j,i<=" << kMaxA << ",j<=" << kMaxH << ";a^4=0;H^3=aH^2-a^2H+a^3;int(a^3H^2)=1;g:";
        for (const auto& row : pairing_matrix())
            for (const auto& v : row) os << v.str() << ",";
        std::uint64_t h = 1469598103934665603ull;  // FNV-1a
        for (unsigned char ch : os.str()) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return std::string(buf);
    }();
    return fp;
}

}  // namespace cuspcount::ring
