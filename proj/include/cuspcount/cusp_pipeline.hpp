#pragma once

/// Final assembly of the cusp counts.  The derivative of a stable map at the
/// marked point is a section of L* tensor ev*W; its Euler class, paired with
/// the line and point conditions, counts cuspidal curves plus the ghost-bubble
/// boundary, each with multiplicity one.  So
///
///     C_d(r, s) = e(L* (x) ev*W) - B,        r + 2s = 3d + 1,
///
/// where the Euler class expands through the splitting principle into the six
/// tautological numbers with coefficients (1, -1, 3, 1, -2, 3) and B is the
/// halved sum over two-component splittings with node factor d1 d2.

#include "cuspcount/numeric.hpp"
#include "cuspcount/taut.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace cuspcount::pipeline {

struct CuspResult {
    int d = 0, r = 0, s = 0;
    Rat euler;
    Rat boundary;
    Int count;  // count = euler - boundary, asserted integral
};

inline void check_dimension(int d, int r, int s) {
    if (d < 1) throw ValidationError("cusp pipeline: degree must be >= 1");
    if (r < 0 || s < 0) throw ValidationError("cusp pipeline: conditions must be nonnegative");
    if (r + 2 * s != 3 * d + 1)
        throw DimensionMismatchError("dimension mismatch: need lines + 2*points = 3d + 1, got " +
                                     std::to_string(r) + " + 2*" + std::to_string(s) + " != " +
                                     std::to_string(3 * d + 1));
}

// e = Phi(2,0,r,s,0) - Phi(1,0,r,s,1) + 3 Phi(1,1,r,s,0)
//     + Phi(0,0,r,s,2) - 2 Phi(0,1,r,s,1) + 3 Phi(0,2,r,s,0),
// the expansion of c1(L*)^2 + c1(L*) c1(W) + c2(W) against the conditions.
// The Phi(0,0,...) term is identically zero but is evaluated anyway.
inline Rat euler_class(const taut::Calculus& taut, int d, int r, int s) {
    check_dimension(d, r, s);
    return taut.phi(d, 2, 0, r, s, 0) - taut.phi(d, 1, 0, r, s, 1) +
           3 * taut.phi(d, 1, 1, r, s, 0) + taut.phi(d, 0, 0, r, s, 2) -
           2 * taut.phi(d, 0, 1, r, s, 1) + 3 * taut.phi(d, 0, 2, r, s, 0);
}

// Ghost-bubble correction.  The ambient cycle carries no plane constraint, so
// theta is instantiated to zero; the theta-general form stays available for
// testing.  The 1/2 cancels the double count of ordered splittings.
inline Rat boundary_general(const taut::Calculus& taut, int d, int r, int s, int theta) {
    check_dimension(d, r, s);
    Int total = 0;
    for (int d1 = 1; d1 < d; ++d1) {
        int d2 = d - d1;
        for (int r1 = 0; r1 <= r; ++r1)
            for (int s1 = 0; s1 <= s; ++s1) {
                Int b = taut.b_split(d1, d2, r1, s1, r - r1, s - s1, theta);
                if (b != 0) total += Int(d1) * d2 * binomial(r, r1) * binomial(s, s1) * b;
            }
    }
    return Rat(total, 2);
}

inline Rat boundary(const taut::Calculus& taut, int d, int r, int s) {
    return boundary_general(taut, d, r, s, 0);
}

// C_d(r, s).  Degree one sits outside the moving-plane setup (a line has no
// unique plane) and is refused unless explicitly overridden; behind the
// override the same formulas are evaluated.
inline CuspResult cusp_count(const taut::Calculus& taut, int d, int r, int s,
                             bool allow_d1 = false) {
    check_dimension(d, r, s);
    if (d == 1 && !allow_d1)
        throw ValidationError("degree 1 is excluded by default; pass the override to evaluate it");
    CuspResult out;
    out.d = d;
    out.r = r;
    out.s = s;
    out.euler = euler_class(taut, d, r, s);
    out.boundary = boundary(taut, d, r, s);
    out.count = require_integer(out.euler - out.boundary, "non-integral count");
    if (out.count < 0)
        std::cerr << "[cuspcount] diagnostic: negative count C_" << d << "(" << r << "," << s
                  << ") = " << out.count.str() << "\n";
    return out;
}

// All rows (r, s) with r = 3d+1-2s for one degree, s ascending.  Rows are
// independent keys; with jobs > 1 they are computed concurrently over the
// shared memo store, and the result must be identical to the sequential one.
inline std::vector<CuspResult> degree_table(const taut::Calculus& taut, int d,
                                            bool allow_d1 = false, int jobs = 1) {
    if (d < 1) throw ValidationError("table: degree must be >= 1");
    if (d == 1 && !allow_d1)
        throw ValidationError("degree 1 is excluded by default; pass the override to evaluate it");
    if (jobs < 1) throw ValidationError("jobs must be >= 1");
    const int row_count = (3 * d + 1) / 2 + 1;
    std::vector<CuspResult> rows(static_cast<std::size_t>(row_count));
    auto fill = [&](int row) {
        int s = row;
        int r = 3 * d + 1 - 2 * s;
        rows[static_cast<std::size_t>(row)] = cusp_count(taut, d, r, s, allow_d1);
    };
    if (jobs == 1) {
        for (int row = 0; row < row_count; ++row) fill(row);
        return rows;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    int worker_count = std::min(jobs, row_count);
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w)
        workers.emplace_back([&] {
            for (int row = next.fetch_add(1); row < row_count; row = next.fetch_add(1)) {
                try {
                    fill(row);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

}  // namespace cuspcount::pipeline
