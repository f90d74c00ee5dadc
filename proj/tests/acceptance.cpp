// Acceptance suite.  Each numbered criterion prints exactly one PASS/FAIL
// line; the binary exits nonzero if any criterion fails.  All comparisons are
// exact (integer or rational equality); the two runtime budgets are enforced
// as hard bounds.

#include "cuspcount/cusp_pipeline.hpp"
#include "cuspcount/flag_oracle.hpp"
#include "cuspcount/gw_base.hpp"
#include "cuspcount/ring.hpp"
#include "cuspcount/taut.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace cuspcount;
using ring::Mono;
using ring::RingClass;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
    std::printf("[%d] %-64s %s (%.2fs)\n", index, name.c_str(), pass ? "PASS" : "FAIL", seconds);
    if (!pass) {
        std::printf("    %s\n", detail.c_str());
        ++failures;
    }
}

void criterion(int index, const std::string& name,
               const std::function<bool(std::ostringstream&)>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream detail;
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(index, name, pass, seconds, detail.str());
}

struct Expected {
    int d, r, s;
    const char* count;
};

// Reference values for cuspidal planar cubics and quartics.
const Expected kReference[] = {
    {3, 10, 0, "17760"}, {3, 8, 1, "2064"},      {3, 6, 2, "240"},    {3, 4, 3, "24"},
    {4, 13, 0, "10613184"}, {4, 11, 1, "760368"}, {4, 9, 2, "49152"}, {4, 7, 3, "2304"},
};

}  // namespace

int main() {
    // 1. Exact cubic and quartic counts on a cold cache, under ten seconds.
    criterion(1, "cubic/quartic cuspidal counts, exact, cold cache < 10s", [](auto& detail) {
        auto t0 = std::chrono::steady_clock::now();
        gw::Provider provider;
        taut::Calculus calc(provider);
        bool ok = true;
        for (const auto& e : kReference) {
            auto res = pipeline::cusp_count(calc, e.d, e.r, e.s);
            if (res.count != Int(e.count)) {
                detail << "C_" << e.d << "(" << e.r << "," << e.s << ") = " << res.count.str()
                       << ", expected " << e.count << "; ";
                ok = false;
            }
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (seconds >= 10.0) {
            detail << "runtime " << seconds << "s exceeds the 10s budget";
            ok = false;
        }
        return ok;
    });

    gw::Provider provider;
    taut::Calculus calc(provider);

    // 2. Every conic count vanishes.
    criterion(2, "cuspidal conic counts vanish for all r + 2s = 7", [&](auto& detail) {
        bool ok = true;
        for (int s = 0; 2 * s <= 7; ++s) {
            int r = 7 - 2 * s;
            auto res = pipeline::cusp_count(calc, 2, r, s);
            if (res.count != 0) {
                detail << "C_2(" << r << "," << s << ") = " << res.count.str() << "; ";
                ok = false;
            }
        }
        return ok;
    });

    // 3. Degree-one engine values equal the Schubert oracle on all ten shells.
    criterion(3, "degree-1 engine equals the Schubert flag oracle (10 keys)", [&](auto& detail) {
        bool ok = true;
        int keys = 0;
        for (int r = 0; r <= 5; ++r)
            for (int s = 0; 2 * s <= 5 - r; ++s) {
                int theta = 5 - r - 2 * s;
                if (theta > 3) continue;
                ++keys;
                Int engine = provider.base_number(1, r, s, theta);
                Int oracle = flag::n1(r, s, theta);
                if (engine != oracle) {
                    detail << "N_1(" << r << "," << s << "," << theta << "): engine "
                           << engine.str() << " vs oracle " << oracle.str() << "; ";
                    ok = false;
                }
            }
        if (keys != 10) {
            detail << "expected 10 admissible keys, saw " << keys;
            ok = false;
        }
        if (flag::n1(4, 0, 1) != 2 || flag::n1(2, 1, 1) != 1 || flag::n1(5, 0, 0) != 0) {
            detail << "pinned oracle values changed";
            ok = false;
        }
        return ok;
    });

    // 4. Convention gates: off-shell keys return exactly zero.
    criterion(4, "off-shell vanishing sweep, 500+ random keys for N and Phi", [&](auto& detail) {
        std::mt19937_64 rng(8128);
        int checked = 0;
        while (checked < 520) {
            int d = 1 + static_cast<int>(rng() % 4);
            int r = static_cast<int>(rng() % 18);
            int s = static_cast<int>(rng() % 9);
            int theta = static_cast<int>(rng() % 5);
            if (theta <= 3 && r + 2 * s + theta != 3 * d + 2) {
                if (provider.base_number(d, r, s, theta) != 0) {
                    detail << "N_" << d << "(" << r << "," << s << "," << theta << ") != 0";
                    return false;
                }
                ++checked;
            }
            static const std::pair<int, int> levels[] = {{0, 0}, {0, 1}, {0, 2}, {0, 3},
                                                         {1, 0}, {1, 1}, {2, 0}};
            auto [i, j] = levels[rng() % 7];
            if (theta <= 3 && r + 2 * s + theta + i + j != 3 * d + 3) {
                if (calc.phi(d, i, j, r, s, theta) != 0) {
                    detail << "Phi_" << d << "(" << i << "," << j << "," << r << "," << s << ","
                           << theta << ") != 0";
                    return false;
                }
                ++checked;
            }
        }
        return true;
    });

    // 5. Algebraic identities.
    criterion(5, "identities: t2 = -2 t1, b_tilde = -2 b_split, symmetry, Chern", [&](auto& detail) {
        for (int d1 = 1; d1 <= 3; ++d1)
            for (int d2 = 1; d1 + d2 <= 4; ++d2)
                for (int theta = 0; theta <= 3; ++theta)
                    for (int r1 = 0; r1 <= 3 * d1 + 2; ++r1)
                        for (int s1 = 0; 2 * s1 <= 3 * d1 + 2 - r1; ++s1)
                            for (int r2 = 0; r2 <= 3 * d2 + 2; ++r2)
                                for (int s2 = 0; 2 * s2 <= 3 * d2 + 2 - r2; ++s2) {
                                    taut::SplitKey k{d1, d2, r1, s1, r2, s2, theta};
                                    if (calc.b_tilde(k) != -2 * calc.b_split(k)) {
                                        detail << "b_tilde != -2 b_split at (" << d1 << "," << d2
                                               << "," << r1 << "," << s1 << "," << r2 << "," << s2
                                               << "," << theta << ")";
                                        return false;
                                    }
                                    if (theta == 0 &&
                                        calc.b_split(d1, d2, r1, s1, r2, s2, 0) !=
                                            calc.b_split(d2, d1, r2, s2, r1, s1, 0)) {
                                        detail << "b_split symmetry broken";
                                        return false;
                                    }
                                }
        for (int d = 1; d <= 4; ++d)
            for (int theta = 0; theta <= 3; ++theta)
                for (int r = 0; r <= 3 * d + 1; ++r)
                    for (int s = 0; 2 * s <= 3 * d + 1 - r; ++s)
                        if (calc.t2(d, r, s, theta) != -2 * calc.t1(d, r, s, theta)) {
                            detail << "t2 != -2 t1 at (" << d << "," << r << "," << s << ","
                                   << theta << ")";
                            return false;
                        }

        auto [c1, c2] = ring::chern_w();
        RingClass cw = RingClass::one() + c1 + c2;
        RingClass lhs = cw * ring::reduce({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
        RingClass rhs = ring::reduce({{0, 0, 1}, {0, 1, 4}, {0, 2, 6}, {0, 3, 4}, {0, 4, 1}});
        for (int k = 0; k <= 2; ++k)
            if (!(lhs.degree_part(k) == rhs.degree_part(k))) {
                detail << "Chern identity fails in degree " << k;
                return false;
            }
        for (Mono e : ring::basis()) {
            const RingClass& dual = ring::poincare_dual(e);
            for (Mono f : ring::basis())
                if (ring::integrate(dual * RingClass::monomial(f)) != (e == f ? 1 : 0)) {
                    detail << "pairing inverse fails at (" << e.to_string() << "," << f.to_string()
                           << ")";
                    return false;
                }
        }
        return true;
    });

    // 6. Engine self-consistency.
    criterion(6, "WDVV residuals, divisor axiom, permutation invariance", [&](auto& detail) {
        std::mt19937_64 rng(2718281);
        auto random_mono = [&] { return ring::basis()[rng() % 12]; };
        for (int trial = 0; trial < 100; ++trial) {
            int d = static_cast<int>(rng() % 3);
            std::vector<RingClass> extras;
            for (unsigned k = rng() % 3; k > 0; --k)
                extras.push_back(RingClass::monomial(random_mono()));
            Rat res = provider.wdvv_residual(d, RingClass::monomial(random_mono()),
                                             RingClass::monomial(random_mono()),
                                             RingClass::monomial(random_mono()),
                                             RingClass::monomial(random_mono()), extras);
            if (res != 0) {
                detail << "nonzero WDVV residual in trial " << trial;
                return false;
            }
        }
        int checked = 0;
        while (checked < 100) {
            int d = 1 + static_cast<int>(rng() % 3);
            std::vector<Mono> ins;
            int total = 0;
            while (total < 3 * d + static_cast<int>(ins.size()) + 2) {
                Mono m = random_mono();
                if (m.degree() < 2) continue;
                ins.push_back(m);
                total += m.degree();
            }
            if (total != 3 * d + static_cast<int>(ins.size()) + 2) continue;
            std::vector<Mono> padded = ins;
            padded.push_back(Mono{0, 1});
            if (provider.invariant(d, padded) != Rat(d) * provider.invariant(d, ins)) {
                detail << "divisor axiom fails for " << gw::InvariantKey{d, ins}.to_string();
                return false;
            }
            ++checked;
        }
        std::vector<RingClass> classes{RingClass::monomial(Mono{0, 2}),
                                       RingClass::monomial(Mono{0, 2}),
                                       ring::reduce({{0, 3, 1}}),
                                       RingClass::monomial(Mono{0, 2}),
                                       RingClass::monomial(Mono{1, 1}),
                                       RingClass::monomial(Mono{0, 2})};
        Rat reference = provider.invariant_of_classes(2, classes);
        for (int trial = 0; trial < 20; ++trial) {
            std::shuffle(classes.begin(), classes.end(), rng);
            if (provider.invariant_of_classes(2, classes) != reference) {
                detail << "insertion permutation changed the invariant";
                return false;
            }
        }
        return true;
    });

    // 7. Integrality and determinism through degree five.
    criterion(7, "integrality + cold/warm + jobs determinism through d = 5, < 5 min",
              [&](auto& detail) {
        auto t0 = std::chrono::steady_clock::now();

        gw::Provider cold_provider;
        taut::Calculus cold(cold_provider);
        std::vector<pipeline::CuspResult> cold_rows;
        for (int d = 2; d <= 5; ++d) {
            auto rows = pipeline::degree_table(cold, d, false, 1);
            // cusp_count asserts integrality internally; spot-check anyway
            for (const auto& row : rows)
                if (!is_integer(row.euler - row.boundary)) {
                    detail << "non-integral count at d=" << d;
                    return false;
                }
            cold_rows.insert(cold_rows.end(), rows.begin(), rows.end());
        }

        // warm engine: reload the cold run's records and recompute
        gw::Provider warm_provider;
        warm_provider.import_cache_records(cold_provider.export_base_records());
        taut::Calculus warm(warm_provider);
        warm.import_cache_records(cold.export_phi_records());

        // fresh engine with several workers
        gw::Provider par_provider;
        taut::Calculus par(par_provider);
        unsigned hw = std::max(2u, std::thread::hardware_concurrency());

        std::size_t at = 0;
        for (int d = 2; d <= 5; ++d) {
            auto warm_rows = pipeline::degree_table(warm, d, false, 1);
            auto par_rows = pipeline::degree_table(par, d, false, static_cast<int>(hw));
            for (std::size_t k = 0; k < warm_rows.size(); ++k, ++at) {
                const auto& a = cold_rows[at];
                const auto& b = warm_rows[k];
                const auto& c = par_rows[k];
                if (a.count != b.count || a.euler != b.euler || a.boundary != b.boundary) {
                    detail << "cold/warm mismatch at d=" << d << " s=" << k;
                    return false;
                }
                if (a.count != c.count || a.euler != c.euler || a.boundary != c.boundary) {
                    detail << "jobs determinism mismatch at d=" << d << " s=" << k;
                    return false;
                }
            }
        }

        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (seconds >= 300.0) {
            detail << "runtime " << seconds << "s exceeds the 5 minute budget";
            return false;
        }
        return true;
    });

    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
