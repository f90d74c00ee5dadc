#pragma once

/// Tautological intersection numbers Phi_d(i, j, r, s, theta) on the
/// one-marked-point moduli of planar stable maps, at cotangent levels
/// i = 0, 1, 2, together with the boundary-splitting numbers they recurse
/// through.  Level zero reduces directly to base numbers; levels one and two
/// substitute the divisor expression for c_1(L*), whose three coefficients
/// 1/d^2, -2/d and d_2^2/d^2 are baked into the recursions.  Boundary strata
/// split the plane constraint through the diagonal of the dual P^3, which is
/// where the sum over a^i x a^{3-i} in b_split comes from.

#include "cuspcount/gw_base.hpp"
#include "cuspcount/numeric.hpp"
#include "cuspcount/store.hpp"

#include <array>
#include <iostream>
#include <map>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

namespace cuspcount::taut {

// Key of Phi_d(i, j, r, s, theta); i is the power of c_1(L*), j the power of
// ev*H.  Nonzero values require r + 2s + theta + i + j = 3d + 3.  Supported
// levels: i = 0 with any j, i = 1 with j <= 1, i = 2 with j = 0; the rest are
// not needed for the Euler class and raise unsupported-level.
struct PhiKey {
    int d = 1, i = 0, j = 0, r = 0, s = 0, theta = 0;

    friend bool operator<(const PhiKey& a, const PhiKey& b) {
        return std::array{a.d, a.i, a.j, a.r, a.s, a.theta} <
               std::array{b.d, b.i, b.j, b.r, b.s, b.theta};
    }
    std::string to_string() const {
        std::ostringstream os;
        os << "Phi_" << d << "(" << i << "," << j << "," << r << "," << s << "," << theta << ")";
        return os.str();
    }
};

// Key of the two-component splitting number B_{d1,d2}(r1, s1, r2, s2, theta).
struct SplitKey {
    int d1 = 1, d2 = 1;
    int r1 = 0, s1 = 0, r2 = 0, s2 = 0;
    int theta = 0;
};

class Calculus {
public:
    explicit Calculus(gw::Provider& base) : base_(base) {}

    gw::Provider& base() { return base_; }

    // ----- boundary splitting numbers ---------------------------------------

    // Two-component splittings, summed over the diagonal classes a^i x a^{3-i}.
    Int b_split(const SplitKey& k) const {
        check_split(k);
        Int total = 0;
        for (int i = 0; i <= 3; ++i)
            total += base_.base_number(k.d1, k.r1, k.s1, i) *
                     base_number_gated(k.d2, k.r2, k.s2, k.theta + 3 - i);
        return total;
    }
    Int b_split(int d1, int d2, int r1, int s1, int r2, int s2, int theta) const {
        return b_split(SplitKey{d1, d2, r1, s1, r2, s2, theta});
    }

    // Splittings weighted for a marked point on a hyperplane: d1 d2 choices of
    // the node and d1 positions of the marked point.
    Int b_marked(int d1, int d2, int r, int s, int theta) const {
        if (d1 < 1 || d2 < 1)
            throw ValidationError("b_marked: both component degrees must be positive");
        if (r < 0 || s < 0 || theta < 0)
            throw ValidationError("b_marked: conditions must be nonnegative");
        Int total = 0;
        for (int r1 = 0; r1 <= r; ++r1)
            for (int s1 = 0; s1 <= s; ++s1)
                total += binomial(r, r1) * binomial(s, s1) * Int(d1) * d1 * d2 *
                         b_split(d1, d2, r1, s1, r - r1, s - s1, theta);
        return total;
    }

    // Splitting with the cotangent weight on the marked component.
    Int b_tilde(const SplitKey& k) const {
        check_split(k);
        Rat total = 0;
        for (int i = 0; i <= 3; ++i) {
            Rat left = phi_gated(PhiKey{k.d1, 1, 0, k.r1, k.s1, i});
            if (left == 0) continue;
            total += left * base_number_gated(k.d2, k.r2, k.s2, k.theta + 3 - i);
        }
        return require_integer(total, "non-integral b_tilde");
    }
    Int b_tilde(int d1, int d2, int r1, int s1, int r2, int s2, int theta) const {
        return b_tilde(SplitKey{d1, d2, r1, s1, r2, s2, theta});
    }

    Int t1(int d, int r, int s, int theta) const {
        return t_sum(d, r, s, theta, /*tilde=*/false);
    }
    Int t2(int d, int r, int s, int theta) const {
        return t_sum(d, r, s, theta, /*tilde=*/true);
    }

    // ----- Phi --------------------------------------------------------------

    Rat phi(const PhiKey& k) const {
        const bool supported = (k.i == 0 && k.j >= 0) || (k.i == 1 && (k.j == 0 || k.j == 1)) ||
                               (k.i == 2 && k.j == 0);
        if (k.i < 0 || k.j < 0 || !supported)
            throw UnsupportedLevelError("unsupported-level: " + k.to_string());
        if (k.d < 1) throw ValidationError("phi: degree must be >= 1");
        if (k.r < 0 || k.s < 0 || k.theta < 0 || k.theta > 3) return 0;
        if (k.r + 2 * k.s + k.theta + k.i + k.j != 3 * k.d + 3) return 0;
        {
            std::shared_lock lock(mutex_);
            auto it = memo_.find(k);
            if (it != memo_.end()) return it->second;
        }
        Rat value = compute_phi(k);
        if (!is_integer(value))
            std::cerr << "[cuspcount] diagnostic: non-integer " << k.to_string() << " = "
                      << rational_to_string(value) << "\n";
        {
            std::unique_lock lock(mutex_);
            auto [it, inserted] = memo_.emplace(k, value);
            if (!inserted && it->second != value)
                throw EngineError("nondeterministic value for " + k.to_string());
        }
        return value;
    }
    Rat phi(int d, int i, int j, int r, int s, int theta) const {
        return phi(PhiKey{d, i, j, r, s, theta});
    }

    // ----- persistence -------------------------------------------------------

    void import_cache_records(const std::vector<store::Record>& records) {
        std::unique_lock lock(mutex_);
        for (const auto& rec : records) {
            if (rec.kind != store::RecordKind::Phi) continue;
            PhiKey k{rec.key[0], rec.key[1], rec.key[2], rec.key[3], rec.key[4], rec.key[5]};
            auto [it, inserted] = memo_.emplace(k, rec.value);
            if (!inserted && it->second != rec.value)
                throw StoreError("cache conflicts with computed value: " + store::to_line(rec));
        }
    }

    std::vector<store::Record> export_phi_records() const {
        std::shared_lock lock(mutex_);
        std::vector<store::Record> out;
        out.reserve(memo_.size());
        for (const auto& [k, v] : memo_)
            out.push_back({store::RecordKind::Phi, {k.d, k.i, k.j, k.r, k.s, k.theta}, v});
        return out;
    }

private:
    static void check_split(const SplitKey& k) {
        if (k.d1 < 1 || k.d2 < 1)
            throw ValidationError("b_split: both component degrees must be positive");
        if (k.r1 < 0 || k.s1 < 0 || k.r2 < 0 || k.s2 < 0 || k.theta < 0)
            throw ValidationError("b_split: conditions must be nonnegative");
    }

    // base_number with the theta > 3 overflow treated as zero, as in the
    // diagonal sums where theta + 3 - i can exceed 3.
    Int base_number_gated(int d, int r, int s, int theta) const {
        if (theta > 3) return 0;
        return base_.base_number(d, r, s, theta);
    }

    Rat phi_gated(const PhiKey& k) const {
        if (k.theta > 3) return 0;
        return phi(k);
    }

    Int t_sum(int d, int r, int s, int theta, bool tilde) const {
        if (d < 1) throw ValidationError("t1/t2: degree must be >= 1");
        if (r < 0 || s < 0 || theta < 0)
            throw ValidationError("t1/t2: conditions must be nonnegative");
        Int total = 0;
        for (int d1 = 1; d1 < d; ++d1) {
            int d2 = d - d1;
            Int weight = Int(d1) * d2 * d2 * d2;
            for (int r1 = 0; r1 <= r; ++r1)
                for (int s1 = 0; s1 <= s; ++s1) {
                    SplitKey k{d1, d2, r1, s1, r - r1, s - s1, theta};
                    Int b = tilde ? b_tilde(k) : b_split(k);
                    if (b != 0) total += binomial(r, r1) * binomial(s, s1) * weight * b;
                }
        }
        return total;
    }

    Rat compute_phi(const PhiKey& k) const {
        const auto [d, i, j, r, s, theta] = std::array{k.d, k.i, k.j, k.r, k.s, k.theta};
        if (i == 0) {
            switch (j) {
                case 0: return 0;
                case 1: return Rat(Int(d) * base_.base_number(d, r, s, theta));
                case 2: return Rat(base_.base_number(d, r + 1, s, theta));
                case 3: return Rat(base_.base_number(d, r, s + 1, theta));
                default: return 0;  // ev*H^j = 0 for j > 3
            }
        }
        const Rat inv_d2 = Rat(1, Int(d) * d);
        const Rat two_over_d = Rat(2, d);
        if (i == 1 && j == 0) return Rat(-2 * base_.base_number(d, r, s, theta));
        if (i == 1 && j == 1) {
            Int splits = 0;
            for (int d1 = 1; d1 < d; ++d1) {
                int d2 = d - d1;
                Int weight = Int(d1) * d1 * d2 * d2 * d2;
                for (int r1 = 0; r1 <= r; ++r1)
                    for (int s1 = 0; s1 <= s; ++s1) {
                        Int b = b_split(d1, d2, r1, s1, r - r1, s - s1, theta);
                        if (b != 0) splits += binomial(r, r1) * binomial(s, s1) * weight * b;
                    }
            }
            return inv_d2 * phi(PhiKey{d, 0, 1, r + 1, s, theta}) -
                   two_over_d * phi(PhiKey{d, 0, 2, r, s, theta}) + inv_d2 * Rat(splits);
        }
        // (i, j) == (2, 0)
        return inv_d2 * phi(PhiKey{d, 1, 0, r + 1, s, theta}) -
               two_over_d * phi(PhiKey{d, 1, 1, r, s, theta}) +
               inv_d2 * Rat(t1(d, r, s, theta) + t2(d, r, s, theta));
    }

    gw::Provider& base_;
    mutable std::shared_mutex mutex_;
    mutable std::map<PhiKey, Rat> memo_;
};

}  // namespace cuspcount::taut
