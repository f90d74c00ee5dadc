#pragma once

/// Provider of the planar characteristic numbers N_d(r, s, theta) for all
/// d >= 1, realized as genus-zero fiber-class invariants of the incidence
/// variety S.  A fiber-class stable map to S projects to a point of the dual
/// P^3, so it is exactly a plane together with a rational curve inside it;
/// S is homogeneous, so the invariants are enumerative and the associativity
/// (WDVV) relations hold.  Both divisor classes a and H pair with the fiber
/// curve class ((a, f) = 0, (H, f) = 1), and the cohomology of S is generated
/// by divisors, so every invariant reduces through the divisor axiom and a
/// WDVV-based reconstruction to classical triple integrals plus one seeded
/// two-point value.
///
/// Reconstruction order: primary on the degree d, then on the number of
/// insertions n, then ascending-lexicographically on the sorted vector of
/// insertion degrees.  The solver peels the minimal-degree insertion as
/// D * gamma' (preferring D = a, whose divisor pairing is zero and kills all
/// split-off terms of the same degree); every other unknown in the relation
/// is strictly smaller in this order, which is asserted at runtime.
///
/// The degree-one sector satisfies a scale-free linear system (all WDVV terms
/// at d = 1 are collapses of the same degree), so one normalization is
/// seeded: the two-point invariant pairing a point of S with a line condition
/// equals 1 (in a fixed plane, one line joins a given point to the trace of a
/// generic line of P^3).  Everything else, in every degree, is derived.

#include "cuspcount/flag_oracle.hpp"
#include "cuspcount/numeric.hpp"
#include "cuspcount/ring.hpp"
#include "cuspcount/store.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cuspcount::gw {

using ring::Mono;
using ring::RingClass;

struct ProviderConfig {
    enum class Mode { Engine, TableImport, Hybrid };
    Mode mode = Mode::Engine;
    std::optional<std::filesystem::path> table_path;
    // Assert every degree-one base number against the Schubert oracle.
    bool consistency_check = true;
};

// Degree plus a canonically sorted multiset of basis-monomial insertions.
struct InvariantKey {
    int d = 0;
    std::vector<Mono> insertions;

    void canonicalize() { std::sort(insertions.begin(), insertions.end()); }

    friend bool operator==(const InvariantKey& a, const InvariantKey& b) {
        return a.d == b.d && a.insertions == b.insertions;
    }
    friend bool operator<(const InvariantKey& a, const InvariantKey& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.insertions.size() != b.insertions.size())
            return a.insertions.size() < b.insertions.size();
        return std::lexicographical_compare(a.insertions.begin(), a.insertions.end(),
                                            b.insertions.begin(), b.insertions.end());
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "<";
        for (std::size_t k = 0; k < insertions.size(); ++k)
            os << (k ? ", " : "") << insertions[k].to_string();
        os << ">_" << d;
        return os.str();
    }
};

namespace detail {

// Well-founded order used by the reconstruction: (d, n, sorted degree vector).
struct OrderKey {
    int d;
    std::size_t n;
    std::vector<int> degrees;  // ascending

    static OrderKey of(const InvariantKey& k) {
        OrderKey o{k.d, k.insertions.size(), {}};
        o.degrees.reserve(o.n);
        for (Mono m : k.insertions) o.degrees.push_back(m.degree());
        std::sort(o.degrees.begin(), o.degrees.end());
        return o;
    }
    friend bool operator<(const OrderKey& a, const OrderKey& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.n != b.n) return a.n < b.n;
        return a.degrees < b.degrees;
    }
};

inline const std::vector<std::vector<std::pair<Mono, Int>>>& dual_basis_terms() {
    static const auto duals = [] {
        std::vector<std::vector<std::pair<Mono, Int>>> out(ring::kBasisSize);
        for (Mono e : ring::basis()) {
            const RingClass& dual = ring::poincare_dual(e);
            for (Mono f : ring::basis())
                if (dual.coeff(f) != 0) out[e.index()].emplace_back(f, dual.coeff(f));
        }
        return out;
    }();
    return duals;
}

}  // namespace detail

class Provider {
public:
    explicit Provider(ProviderConfig config = {}) : config_(std::move(config)) {
        if (config_.table_path) import_table(*config_.table_path);
    }

    const ProviderConfig& config() const { return config_; }

    // ----- invariants ------------------------------------------------------

    // Genus-zero fiber-class invariant with basis-monomial insertions.
    Rat invariant(int d, std::vector<Mono> insertions) const {
        if (d < 0) throw ValidationError("invariant: degree must be nonnegative");
        auto [coeff, key] = reduce_factor(d, std::move(insertions));
        if (!key) return coeff;
        return coeff * eval_key(*key);
    }

    // Multilinear extension to arbitrary ring classes.
    Rat invariant_of_classes(int d, const std::vector<RingClass>& classes) const {
        Rat total = 0;
        std::vector<Mono> monos(classes.size());
        expand_classes(d, classes, 0, Int(1), monos, total);
        return total;
    }

    // LHS - RHS of the WDVV relation for slot classes (ga, gb, gc, gd) and an
    // extra insertion multiset; zero on consistent data.
    Rat wdvv_residual(int d, const RingClass& ga, const RingClass& gb, const RingClass& gc,
                      const RingClass& gd, const std::vector<RingClass>& extras) const {
        if (d < 0) throw ValidationError("wdvv_residual: degree must be nonnegative");
        Rat total = 0;
        std::vector<RingClass> all{ga, gb, gc, gd};
        all.insert(all.end(), extras.begin(), extras.end());
        std::vector<Mono> monos(all.size());
        std::function<void(std::size_t, Int)> walk = [&](std::size_t idx, Int coeff) {
            if (coeff == 0) return;
            if (idx == all.size()) {
                std::vector<Mono> ex(monos.begin() + 4, monos.end());
                std::vector<SymbolicTerm> terms;
                append_wdvv_terms(d, monos[0], monos[1], monos[2], monos[3], ex, Rat(1), terms);
                append_wdvv_terms(d, monos[0], monos[2], monos[1], monos[3], ex, Rat(-1), terms);
                for (const auto& t : terms) {
                    Rat v = t.coeff;
                    for (const auto& k : t.keys) v *= eval_key(k);
                    total += coeff * v;
                }
                return;
            }
            for (Mono m : ring::basis()) {
                if (all[idx].coeff(m) == 0) continue;
                monos[idx] = m;
                walk(idx + 1, coeff * all[idx].coeff(m));
            }
        };
        walk(0, Int(1));
        return total;
    }

    // ----- base numbers -----------------------------------------------------

    // N_d(r, s, theta): d-degree planar curves through r lines, s points, with
    // a plane constraint a^theta.  Zero unless r + 2s + theta = 3d + 2 and
    // theta <= 3.
    Int base_number(int d, int r, int s, int theta) const {
        if (d < 1) throw ValidationError("base_number: degree must be >= 1");
        if (r < 0 || s < 0 || theta < 0)
            throw ValidationError("base_number: conditions must be nonnegative");
        if (theta > 3 || r + 2 * s + theta != 3 * d + 2) return 0;
        std::array<int, 4> key{d, r, s, theta};
        {
            std::shared_lock lock(base_mutex_);
            auto it = base_memo_.find(key);
            if (it != base_memo_.end()) return it->second;
        }
        Int value = compute_base(d, r, s, theta);
        {
            std::unique_lock lock(base_mutex_);
            auto [it, inserted] = base_memo_.emplace(key, value);
            if (!inserted && it->second != value)
                throw EngineError("nondeterministic base number for " + base_key_string(key));
        }
        return value;
    }

    // ----- table import / cache --------------------------------------------

    // Loads externally computed N records (module store format); returns the
    // number of records taken.  Available to the table and hybrid providers.
    std::size_t import_table(const std::filesystem::path& path) {
        return import_table_records(store::load(path));
    }

    std::size_t import_table_records(const std::vector<store::Record>& records) {
        std::size_t count = 0;
        std::unique_lock lock(base_mutex_);
        for (const auto& rec : records) {
            if (rec.kind != store::RecordKind::BaseNumber) continue;
            std::array<int, 4> key{rec.key[0], rec.key[1], rec.key[2], rec.key[3]};
            Int value = require_integer(rec.value, "imported base number");
            auto [it, inserted] = table_.emplace(key, value);
            if (!inserted && it->second != value)
                throw StoreError("duplicate key with conflicting value: " + store::to_line(rec));
            if (config_.consistency_check && key[0] == 1) {
                Int oracle = flag::n1(key[1], key[2], key[3]);
                if (oracle != value)
                    throw ProviderMismatchError("imported N" + base_key_string(key) + " = " +
                                                value.str() + " disagrees with the degree-one oracle " +
                                                oracle.str());
            }
            ++count;
        }
        return count;
    }

    // Trusted memo records from a previous run of this engine.
    void import_cache_records(const std::vector<store::Record>& records) {
        std::unique_lock lock(base_mutex_);
        for (const auto& rec : records) {
            if (rec.kind != store::RecordKind::BaseNumber) continue;
            std::array<int, 4> key{rec.key[0], rec.key[1], rec.key[2], rec.key[3]};
            Int value = require_integer(rec.value, "cached base number");
            auto [it, inserted] = base_memo_.emplace(key, value);
            if (!inserted && it->second != value)
                throw StoreError("cache conflicts with computed value: " + store::to_line(rec));
        }
    }

    std::vector<store::Record> export_base_records() const {
        std::shared_lock lock(base_mutex_);
        std::vector<store::Record> out;
        out.reserve(base_memo_.size());
        for (const auto& [key, value] : base_memo_)
            out.push_back({store::RecordKind::BaseNumber,
                           {key[0], key[1], key[2], key[3]},
                           Rat(value)});
        return out;
    }

    std::size_t memo_size() const {
        std::shared_lock lock(memo_mutex_);
        return memo_.size();
    }

private:
    // ----- symbolic factor reduction ----------------------------------------

    struct Factor {
        Rat coeff;
        std::optional<InvariantKey> key;  // absent: pure scalar
    };

    struct SymbolicTerm {
        Rat coeff;
        std::vector<InvariantKey> keys;  // 0, 1 or 2 factors
    };

    // Applies the axioms that need no recursion: degree-zero invariants are
    // classical triple integrals, a fundamental-class insertion kills d >= 1,
    // divisor insertions strip off (a gives factor 0, H gives factor d), and
    // the dimension gate.  What remains is a canonical solver key.
    Factor reduce_factor(int d, std::vector<Mono> monos) const {
        if (d == 0) {
            if (monos.size() != 3) return {Rat(0), std::nullopt};
            RingClass p = RingClass::one();
            for (Mono m : monos) p = p * RingClass::monomial(m);
            return {Rat(ring::integrate(p)), std::nullopt};
        }
        Rat coeff = 1;
        std::vector<Mono> ins;
        ins.reserve(monos.size());
        int total_degree = 0;
        for (Mono m : monos) {
            int dm = m.degree();
            if (dm == 0) return {Rat(0), std::nullopt};  // fundamental class
            if (dm == 1) {
                if (m.i == 1) return {Rat(0), std::nullopt};  // (a, fiber) = 0
                coeff *= d;                                   // (H, d * fiber) = d
                continue;
            }
            ins.push_back(m);
            total_degree += dm;
        }
        std::size_t n = ins.size();
        if (total_degree != 3 * d + static_cast<int>(n) + 2) return {Rat(0), std::nullopt};
        if (n <= 1) return {Rat(0), std::nullopt};  // never on-shell; keep the gate closed
        InvariantKey key{d, std::move(ins)};
        key.canonicalize();
        return {coeff, std::move(key)};
    }

    // Terms of one WDVV bracket,
    //   sum_{d1+d2=d} sum_{A|B = extras} sum_e <ga, gb, A, T_e> <T^e, gc, gd, B>,
    // left symbolic: each term is a scalar times at most two solver keys.
    // Splitting the extras over labeled marked points weights a sub-multiset
    // by the product of binomial coefficients.
    void append_wdvv_terms(int d, Mono ga, Mono gb, Mono gc, Mono gd,
                           const std::vector<Mono>& extras, const Rat& sign,
                           std::vector<SymbolicTerm>& out) const {
        std::vector<std::pair<Mono, int>> grouped;
        {
            std::vector<Mono> sorted_extras = extras;
            std::sort(sorted_extras.begin(), sorted_extras.end());
            for (Mono m : sorted_extras) {
                if (!grouped.empty() && grouped.back().first == m)
                    ++grouped.back().second;
                else
                    grouped.emplace_back(m, 1);
            }
        }
        std::vector<int> take(grouped.size(), 0);
        const auto& duals = detail::dual_basis_terms();

        std::function<void(std::size_t, Int)> enumerate = [&](std::size_t idx, Int weight) {
            if (idx < grouped.size()) {
                for (int k = 0; k <= grouped[idx].second; ++k) {
                    take[idx] = k;
                    enumerate(idx + 1, weight * binomial(grouped[idx].second, k));
                }
                return;
            }
            std::vector<Mono> a_side, b_side;
            for (std::size_t g = 0; g < grouped.size(); ++g) {
                for (int k = 0; k < take[g]; ++k) a_side.push_back(grouped[g].first);
                for (int k = 0; k < grouped[g].second - take[g]; ++k) b_side.push_back(grouped[g].first);
            }
            for (int d1 = 0; d1 <= d; ++d1) {
                int d2 = d - d1;
                for (Mono e : ring::basis()) {
                    std::vector<Mono> left{ga, gb};
                    left.insert(left.end(), a_side.begin(), a_side.end());
                    left.push_back(e);
                    Factor f1 = reduce_factor(d1, std::move(left));
                    if (f1.coeff == 0) continue;
                    for (const auto& [fm, fc] : duals[e.index()]) {
                        std::vector<Mono> right{fm, gc, gd};
                        right.insert(right.end(), b_side.begin(), b_side.end());
                        Factor f2 = reduce_factor(d2, std::move(right));
                        if (f2.coeff == 0) continue;
                        SymbolicTerm term;
                        term.coeff = sign * Rat(weight) * Rat(fc) * f1.coeff * f2.coeff;
                        if (f1.key) term.keys.push_back(*f1.key);
                        if (f2.key) term.keys.push_back(*f2.key);
                        out.push_back(std::move(term));
                    }
                }
            }
        };
        enumerate(0, Int(1));
    }

    // ----- reconstruction ----------------------------------------------------

    Rat eval_key(const InvariantKey& key) const {
        {
            std::shared_lock lock(memo_mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        Rat value = is_seed(key) ? Rat(1) : solve(key);
        {
            std::unique_lock lock(memo_mutex_);
            auto [it, inserted] = memo_.emplace(key, value);
            if (!inserted && it->second != value)
                throw EngineError("nondeterministic invariant for " + key.to_string());
        }
        return value;
    }

    // Normalization of the degree-one sector: the unique line in a plane
    // through a generic point of that plane and the trace of a generic line.
    static bool is_seed(const InvariantKey& key) {
        static const InvariantKey seed = [] {
            InvariantKey k{1, {Mono{0, 2}, Mono{3, 2}}};
            k.canonicalize();
            return k;
        }();
        return key == seed;
    }

    Rat solve(const InvariantKey& key) const {
        const int d = key.d;
        const std::size_t n = key.insertions.size();

        // Peel the minimal-degree insertion, preferring a split through a.
        Mono g1 = key.insertions.front();
        for (Mono m : key.insertions) {
            if (m.degree() != key.insertions.front().degree()) break;
            if (m.i > g1.i) g1 = m;
        }
        Mono divisor = (g1.i >= 1) ? Mono{1, 0} : Mono{0, 1};
        Mono peeled = (g1.i >= 1) ? Mono{static_cast<std::int8_t>(g1.i - 1), g1.j}
                                  : Mono{g1.i, static_cast<std::int8_t>(g1.j - 1)};

        std::vector<Mono> rest = key.insertions;
        rest.erase(std::find(rest.begin(), rest.end(), g1));

        Mono g2, g3;
        std::vector<Mono> extras;
        if (n >= 3) {
            std::sort(rest.begin(), rest.end(), [](Mono x, Mono y) { return y < x; });
            g2 = rest[0];
            g3 = rest[1];
            extras.assign(rest.begin() + 2, rest.end());
        } else {
            g2 = rest[0];
            g3 = Mono{0, 1};  // pad the four-point relation with the divisor H
        }

        std::vector<SymbolicTerm> terms;
        append_wdvv_terms(d, divisor, peeled, g2, g3, extras, Rat(1), terms);
        append_wdvv_terms(d, divisor, g2, peeled, g3, extras, Rat(-1), terms);

        Rat target_coeff = 0;
        Rat accumulated = 0;
        std::map<InvariantKey, Rat> linear;
        std::vector<std::pair<Rat, std::pair<InvariantKey, InvariantKey>>> quadratic;
        for (auto& t : terms) {
            if (t.keys.empty()) {
                accumulated += t.coeff;
            } else if (t.keys.size() == 1) {
                if (t.keys[0] == key)
                    target_coeff += t.coeff;
                else
                    linear[t.keys[0]] += t.coeff;
            } else {
                quadratic.push_back({t.coeff, {t.keys[0], t.keys[1]}});
            }
        }
        if (target_coeff == 0)
            throw UnreachableByReconstructionError("unreachable-by-reconstruction: " +
                                                   key.to_string());

        const auto my_order = detail::OrderKey::of(key);
        for (const auto& [other, c] : linear) {
            if (c == 0) continue;
            if (other.d == d && !(detail::OrderKey::of(other) < my_order))
                throw UnreachableByReconstructionError(
                    "reconstruction ordering violated: " + key.to_string() + " depends on " +
                    other.to_string());
            accumulated += c * eval_key(other);
        }
        for (const auto& [c, pair] : quadratic) {
            if (pair.first.d >= d || pair.second.d >= d)
                throw UnreachableByReconstructionError(
                    "reconstruction ordering violated in split terms of " + key.to_string());
            accumulated += c * eval_key(pair.first) * eval_key(pair.second);
        }
        return -accumulated / target_coeff;
    }

    // ----- base-number assembly ----------------------------------------------

    void expand_classes(int d, const std::vector<RingClass>& classes, std::size_t idx, Int coeff,
                        std::vector<Mono>& monos, Rat& total) const {
        if (coeff == 0) return;
        if (idx == classes.size()) {
            total += Rat(coeff) * invariant(d, monos);
            return;
        }
        for (Mono m : ring::basis()) {
            const Int& c = classes[idx].coeff(m);
            if (c == 0) continue;
            monos[idx] = m;
            expand_classes(d, classes, idx + 1, coeff * c, monos, total);
        }
    }

    static std::string base_key_string(const std::array<int, 4>& k) {
        std::ostringstream os;
        os << "(" << k[0] << "," << k[1] << "," << k[2] << "," << k[3] << ")";
        return os.str();
    }

    Int compute_base(int d, int r, int s, int theta) const {
        std::array<int, 4> key{d, r, s, theta};
        if (config_.mode == ProviderConfig::Mode::TableImport) {
            std::shared_lock lock(base_mutex_);
            auto it = table_.find(key);
            if (it == table_.end())
                throw EngineError("table provider has no record for N" + base_key_string(key));
            return it->second;
        }

        // The plane constraint a^theta is not a divisor insertion (that would
        // wrongly give zero); it rides on one marked point as a^theta * H,
        // with the marked point contributing the factor d.
        std::vector<RingClass> classes;
        classes.reserve(static_cast<std::size_t>(r + s + 1));
        RingClass line_condition = RingClass::monomial(Mono{0, 2});
        RingClass point_condition = ring::reduce({{0, 3, 1}});  // H^3 = aH^2 - a^2H + a^3
        for (int k = 0; k < r; ++k) classes.push_back(line_condition);
        for (int k = 0; k < s; ++k) classes.push_back(point_condition);
        classes.push_back(RingClass::monomial(Mono{static_cast<std::int8_t>(theta), 1}));

        Rat value = invariant_of_classes(d, classes) / d;
        Int n = require_integer(value, "non-integral base number");
        if (n < 0)
            std::cerr << "[cuspcount] diagnostic: negative base number N" << base_key_string(key)
                      << " = " << n.str() << "\n";

        if (config_.consistency_check && d == 1) {
            Int oracle = flag::n1(r, s, theta);
            if (oracle != n)
                throw EngineError("degree-one engine value " + n.str() + " for N" +
                                  base_key_string(key) + " disagrees with the Schubert oracle " +
                                  oracle.str());
        }
        if (config_.mode == ProviderConfig::Mode::Hybrid) {
            std::shared_lock lock(base_mutex_);
            auto it = table_.find(key);
            if (it != table_.end() && it->second != n)
                throw ProviderMismatchError("hybrid providers disagree on N" + base_key_string(key) +
                                            ": engine " + n.str() + ", table " + it->second.str());
        }
        return n;
    }

    ProviderConfig config_;
    mutable std::shared_mutex memo_mutex_;
    mutable std::map<InvariantKey, Rat> memo_;
    mutable std::shared_mutex base_mutex_;
    mutable std::map<std::array<int, 4>, Int> base_memo_;
    std::map<std::array<int, 4>, Int> table_;
};

}  // namespace cuspcount::gw
