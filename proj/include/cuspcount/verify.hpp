#pragma once

/// Low-degree and structural checks behind the `verify` subcommand: the known
/// cuspidal counts for conics, cubics and quartics, the degree-one Schubert
/// oracle, the off-shell vanishing conventions, and the algebraic identities
/// the recursions are built on.

#include "cuspcount/cusp_pipeline.hpp"
#include "cuspcount/flag_oracle.hpp"
#include "cuspcount/gw_base.hpp"
#include "cuspcount/ring.hpp"
#include "cuspcount/taut.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace cuspcount::verify {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;  // expected-vs-computed diff on failure
    double millis = 0.0;
};

// Reference cuspidal counts for low degrees: C_2 vanishes identically, and
// the cubic/quartic tables are pinned exactly.
struct ReferenceCount {
    int d, r, s;
    long long count;
};

inline const std::vector<ReferenceCount>& reference_counts() {
    static const std::vector<ReferenceCount> table = {
        {3, 10, 0, 17760},    {3, 8, 1, 2064},
        {3, 6, 2, 240},       {3, 4, 3, 24},
        {4, 13, 0, 10613184}, {4, 11, 1, 760368},
        {4, 9, 2, 49152},     {4, 7, 3, 2304},
    };
    return table;
}

namespace detail {
template <typename F>
CheckResult timed(const std::string& name, F&& body) {
    CheckResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream diff;
    r.pass = body(diff);
    r.detail = diff.str();
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}
}  // namespace detail

inline std::vector<CheckResult> run(taut::Calculus& calc, int max_degree) {
    if (max_degree < 2) throw ValidationError("verify: max degree must be >= 2");
    gw::Provider& prov = calc.base();
    std::vector<CheckResult> out;

    out.push_back(detail::timed("ring: Chern identity c(W)(1+a+H) = (1+H)^4", [](auto& diff) {
        auto [c1, c2] = ring::chern_w();
        ring::RingClass cw = ring::RingClass::one() + c1 + c2;
        ring::RingClass lhs = cw * ring::reduce({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}});
        ring::RingClass rhs = ring::reduce({{0, 0, 1}, {0, 1, 4}, {0, 2, 6}, {0, 3, 4}, {0, 4, 1}});
        for (int k = 0; k <= 2; ++k)
            if (!(lhs.degree_part(k) == rhs.degree_part(k))) {
                diff << "degree " << k << ": " << lhs.degree_part(k).to_string() << " vs "
                     << rhs.degree_part(k).to_string();
                return false;
            }
        return true;
    }));

    out.push_back(detail::timed("ring: Poincare pairing invertible in complementary degrees", [](auto& diff) {
        for (ring::Mono e : ring::basis()) {
            ring::RingClass d = ring::poincare_dual(e);
            for (ring::Mono f : ring::basis()) {
                Int got = ring::integrate(d * ring::RingClass::monomial(f));
                Int want = (e == f) ? 1 : 0;
                if (got != want) {
                    diff << "dual pairing at (" << e.to_string() << ", " << f.to_string()
                         << "): expected " << want.str() << ", got " << got.str();
                    return false;
                }
            }
        }
        return true;
    }));

    out.push_back(detail::timed("degree-1 oracle equivalence (all ten shells)", [&](auto& diff) {
        for (int r = 0; r <= 5; ++r)
            for (int s = 0; 2 * s <= 5 - r; ++s) {
                int theta = 5 - r - 2 * s;
                if (theta > 3) continue;
                Int engine = prov.base_number(1, r, s, theta);
                Int oracle = flag::n1(r, s, theta);
                if (engine != oracle) {
                    diff << "N_1(" << r << "," << s << "," << theta << "): engine "
                         << engine.str() << ", oracle " << oracle.str();
                    return false;
                }
            }
        return true;
    }));

    const int sweep_degree = std::min(max_degree, 4);

    out.push_back(detail::timed("off-shell vanishing sweep (N and Phi)", [&](auto& diff) {
        std::mt19937_64 rng(20260810);
        int checked = 0;
        while (checked < 500) {
            int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(sweep_degree));
            int r = static_cast<int>(rng() % 16);
            int s = static_cast<int>(rng() % 8);
            int theta = static_cast<int>(rng() % 4);
            if (r + 2 * s + theta != 3 * d + 2) {
                if (prov.base_number(d, r, s, theta) != 0) {
                    diff << "off-shell N_" << d << "(" << r << "," << s << "," << theta
                         << ") is nonzero";
                    return false;
                }
                ++checked;
            }
            static const std::pair<int, int> levels[] = {{0, 0}, {0, 1}, {0, 2}, {0, 3},
                                                         {1, 0}, {1, 1}, {2, 0}};
            auto [i, j] = levels[rng() % 7];
            if (r + 2 * s + theta + i + j != 3 * d + 3) {
                if (calc.phi(d, i, j, r, s, theta) != 0) {
                    diff << "off-shell Phi_" << d << "(" << i << "," << j << "," << r << "," << s
                         << "," << theta << ") is nonzero";
                    return false;
                }
                ++checked;
            }
        }
        return true;
    }));

    out.push_back(detail::timed("splitting identities: b_tilde = -2 b_split, t2 = -2 t1", [&](auto& diff) {
        for (int d = 2; d <= sweep_degree; ++d) {
            for (int d1 = 1; d1 < d; ++d1) {
                int d2 = d - d1;
                for (int theta = 0; theta <= 3; ++theta)
                    for (int r1 = 0; r1 <= 3 * d1 + 2; ++r1)
                        for (int s1 = 0; 2 * s1 <= 3 * d1 + 2 - r1; ++s1) {
                            int rest = 3 * d2 + 2;
                            for (int r2 = 0; r2 <= rest; ++r2)
                                for (int s2 = 0; 2 * s2 <= rest - r2; ++s2) {
                                    taut::SplitKey k{d1, d2, r1, s1, r2, s2, theta};
                                    Int bs = calc.b_split(k);
                                    Int bt = calc.b_tilde(k);
                                    if (bt != -2 * bs) {
                                        diff << "b_tilde != -2 b_split at (" << d1 << "," << d2
                                             << "," << r1 << "," << s1 << "," << r2 << "," << s2
                                             << "," << theta << ")";
                                        return false;
                                    }
                                }
                        }
            }
            for (int theta = 0; theta <= 3; ++theta)
                for (int r = 0; r <= 3 * d + 1; ++r)
                    for (int s = 0; 2 * s <= 3 * d + 1 - r; ++s) {
                        if (calc.t2(d, r, s, theta) != -2 * calc.t1(d, r, s, theta)) {
                            diff << "t2 != -2 t1 at (" << d << "," << r << "," << s << ","
                                 << theta << ")";
                            return false;
                        }
                    }
        }
        return true;
    }));

    out.push_back(detail::timed("b_split symmetry at theta = 0", [&](auto& diff) {
        for (int d1 = 1; d1 <= sweep_degree - 1; ++d1)
            for (int d2 = 1; d1 + d2 <= sweep_degree; ++d2)
                for (int r1 = 0; r1 <= 3 * d1 + 2; ++r1)
                    for (int s1 = 0; 2 * s1 <= 3 * d1 + 2 - r1; ++s1)
                        for (int r2 = 0; r2 <= 3 * d2 + 2; ++r2)
                            for (int s2 = 0; 2 * s2 <= 3 * d2 + 2 - r2; ++s2) {
                                Int lhs = calc.b_split(d1, d2, r1, s1, r2, s2, 0);
                                Int rhs = calc.b_split(d2, d1, r2, s2, r1, s1, 0);
                                if (lhs != rhs) {
                                    diff << "asymmetric at (" << d1 << "," << d2 << "," << r1
                                         << "," << s1 << "," << r2 << "," << s2 << ")";
                                    return false;
                                }
                            }
        return true;
    }));

    out.push_back(detail::timed("WDVV residuals vanish (d <= 2)", [&](auto& diff) {
        std::mt19937_64 rng(97);
        for (int trial = 0; trial < 40; ++trial) {
            int d = static_cast<int>(rng() % 3);
            auto mono = [&] { return ring::basis()[rng() % 12]; };
            std::vector<ring::RingClass> extras;
            for (unsigned k = rng() % 3; k > 0; --k)
                extras.push_back(ring::RingClass::monomial(mono()));
            Rat res = prov.wdvv_residual(d, ring::RingClass::monomial(mono()),
                                         ring::RingClass::monomial(mono()),
                                         ring::RingClass::monomial(mono()),
                                         ring::RingClass::monomial(mono()), extras);
            if (res != 0) {
                diff << "nonzero residual in trial " << trial << ": " << rational_to_string(res);
                return false;
            }
        }
        return true;
    }));

    for (int d = 2; d <= max_degree; ++d) {
        std::ostringstream name;
        name << "cusp counts, degree " << d;
        if (d == 2) name << " (all zero)";
        out.push_back(detail::timed(name.str(), [&, d](auto& diff) {
            auto rows = pipeline::degree_table(calc, d);
            for (const auto& row : rows) {
                for (const auto& ref : reference_counts())
                    if (ref.d == row.d && ref.r == row.r && ref.s == row.s &&
                        row.count != ref.count) {
                        diff << "C_" << d << "(" << row.r << "," << row.s << "): expected "
                             << ref.count << ", computed " << row.count.str();
                        return false;
                    }
                if (d == 2 && row.count != 0) {
                    diff << "C_2(" << row.r << "," << row.s << ") = " << row.count.str()
                         << ", expected 0";
                    return false;
                }
            }
            return true;
        }));
    }

    return out;
}

}  // namespace cuspcount::verify
