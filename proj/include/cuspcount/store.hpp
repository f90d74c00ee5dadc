#pragma once

/// Persistent memo records.  Plain-text, one record per line, so caches can be
/// diffed and inspected by hand:
///
///     cuspcount-cache v1
///     fingerprint <16 hex digits>
///     N 1 4 0 1 2
///     PHI 3 0 1 10 0 1 6120
///
/// N keys are (d, r, s, theta); PHI keys are (d, i, j, r, s, theta).  Values
/// are exact ("p/q" or a bare integer).  The fingerprint pins the ring
/// presentation; caches from an incompatible reduction are rejected.

#include "cuspcount/numeric.hpp"
#include "cuspcount/ring.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cuspcount::store {

inline constexpr const char* kHeader = "cuspcount-cache v1";

enum class RecordKind { BaseNumber, Phi };

struct Record {
    RecordKind kind = RecordKind::BaseNumber;
    std::vector<int> key;  // N: d r s theta | PHI: d i j r s theta
    Rat value;

    friend bool operator==(const Record& a, const Record& b) {
        return a.kind == b.kind && a.key == b.key && a.value == b.value;
    }
    friend bool operator<(const Record& a, const Record& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.key < b.key;
    }
};

inline std::size_t key_size(RecordKind kind) { return kind == RecordKind::BaseNumber ? 4 : 6; }

inline std::string to_line(const Record& r) {
    std::ostringstream os;
    os << (r.kind == RecordKind::BaseNumber ? "N" : "PHI");
    for (int v : r.key) os << ' ' << v;
    os << ' ' << rational_to_string(r.value);
    return os.str();
}

// Deterministic serialization: records sorted by (kind, key), duplicate keys
// with conflicting values rejected, identical caches byte-identical.
inline void save(const std::filesystem::path& path, std::vector<Record> records) {
    std::sort(records.begin(), records.end());
    for (std::size_t k = 1; k < records.size(); ++k) {
        if (records[k - 1].kind == records[k].kind && records[k - 1].key == records[k].key) {
            if (records[k - 1].value != records[k].value)
                throw StoreError("duplicate key with conflicting value: " + to_line(records[k]));
            records.erase(records.begin() + static_cast<long>(k));
            --k;
        }
    }
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw StoreError("cannot open for writing: " + tmp.string());
        out << kHeader << '\n';
        out << "fingerprint " << ring::presentation_fingerprint() << '\n';
        for (const auto& r : records) out << to_line(r) << '\n';
        out.flush();
        if (!out) throw StoreError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);  // atomic replace
}

inline std::vector<Record> load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StoreError("cannot open: " + path.string());
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line)) return {};  // zero-byte file: no records
    ++line_no;
    if (line != kHeader) throw StoreError("version mismatch, expected \"" + std::string(kHeader) + "\", got \"" + line + "\"", line_no);

    if (!std::getline(in, line)) throw StoreError("missing fingerprint line", 2);
    ++line_no;
    {
        std::istringstream ls(line);
        std::string tag, fp;
        ls >> tag >> fp;
        if (tag != "fingerprint" || fp.empty()) throw StoreError("malformed fingerprint line", line_no);
        if (fp != ring::presentation_fingerprint())
            throw StoreError("ring-presentation fingerprint mismatch (cache: " + fp + ", engine: " +
                                 ring::presentation_fingerprint() + ")",
                             line_no);
    }

    std::vector<Record> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        Record rec;
        if (kind == "N")
            rec.kind = RecordKind::BaseNumber;
        else if (kind == "PHI")
            rec.kind = RecordKind::Phi;
        else
            throw StoreError("unknown record kind \"" + kind + "\"", line_no);
        rec.key.resize(key_size(rec.kind));
        for (int& v : rec.key)
            if (!(ls >> v)) throw StoreError("truncated record key", line_no);
        std::string value_text;
        if (!(ls >> value_text)) throw StoreError("missing record value", line_no);
        std::string extra;
        if (ls >> extra) throw StoreError("trailing tokens after value", line_no);
        try {
            rec.value = parse_rational(value_text);
        } catch (const Error& e) {
            throw StoreError(std::string("bad value: ") + e.what(), line_no);
        }
        for (const auto& prev : out)
            if (prev.kind == rec.kind && prev.key == rec.key && prev.value != rec.value)
                throw StoreError("duplicate key with conflicting value: " + to_line(rec), line_no);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace cuspcount::store
