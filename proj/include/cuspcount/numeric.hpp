#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cuspcount {

// All arithmetic in this project is exact. Counts and ring coefficients are
// arbitrary-precision integers; intermediate intersection numbers are exact
// rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input (CLI exit code 2).
struct ValidationError : Error {
    using Error::Error;
};

// Internal invariant violated (CLI exit code 3).
struct EngineError : Error {
    using Error::Error;
};

struct DimensionMismatchError : ValidationError {
    using ValidationError::ValidationError;
};

struct UnsupportedLevelError : ValidationError {
    using ValidationError::ValidationError;
};

struct UnreachableByReconstructionError : EngineError {
    using EngineError::EngineError;
};

struct NonIntegralResultError : EngineError {
    using EngineError::EngineError;
};

struct ProviderMismatchError : EngineError {
    using EngineError::EngineError;
};

struct StoreError : Error {
    StoreError(const std::string& msg, long line = 0)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line_number(line) {}
    long line_number = 0;
};

inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int result = 1;
    for (long t = 0; t < k; ++t) {
        result *= (n - t);
        result /= (t + 1);
    }
    return result;
}

inline bool is_integer(const Rat& x) { return denominator(x) == 1; }

inline Int require_integer(const Rat& x, const char* what) {
    if (!is_integer(x)) throw NonIntegralResultError(std::string(what) + ": " + x.str());
    return numerator(x);
}

// "p/q" with q > 0 and gcd(p, q) = 1; bare integer when q = 1.
inline std::string rational_to_string(const Rat& x) {
    if (is_integer(x)) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline Rat parse_rational(const std::string& text) {
    auto parse_int = [](const std::string& s) -> Int {
        if (s.empty()) throw ValidationError("empty integer literal");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw ValidationError("bad integer literal: " + s);
        for (std::size_t p = start; p < s.size(); ++p)
            if (s[p] < '0' || s[p] > '9') throw ValidationError("bad integer literal: " + s);
        return Int(s);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw ValidationError("rational denominator must be positive: " + text);
    return Rat(num, den);
}

}  // namespace cuspcount
