#include "cuspcount/store.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace cuspcount;
using store::Record;
using store::RecordKind;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<Record> random_records(std::mt19937_64& rng, int count) {
    std::vector<Record> out;
    std::set<std::pair<RecordKind, std::vector<int>>> seen;
    while (static_cast<int>(out.size()) < count) {
        Record rec;
        if (rng() % 2 == 0) {
            rec.kind = RecordKind::BaseNumber;
            rec.key = {static_cast<int>(rng() % 6 + 1), static_cast<int>(rng() % 20),
                       static_cast<int>(rng() % 10), static_cast<int>(rng() % 4)};
        } else {
            rec.kind = RecordKind::Phi;
            rec.key = {static_cast<int>(rng() % 6 + 1), static_cast<int>(rng() % 3),
                       static_cast<int>(rng() % 4),     static_cast<int>(rng() % 20),
                       static_cast<int>(rng() % 10),    static_cast<int>(rng() % 4)};
        }
        if (!seen.insert({rec.kind, rec.key}).second) continue;
        Int num = Int(rng() % 2000) - 1000;
        Int den = Int(rng() % 40) + 1;
        rec.value = Rat(num, den);
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace

TEST_CASE("round-trip identity on random record sets") {
    std::mt19937_64 rng(101);
    auto path = temp_file("cuspcount_roundtrip.txt");
    auto records = random_records(rng, 1000);
    store::save(path, records);
    auto loaded = store::load(path);

    std::sort(records.begin(), records.end());
    REQUIRE(loaded.size() == records.size());
    for (std::size_t k = 0; k < records.size(); ++k) CHECK(loaded[k] == records[k]);
    std::filesystem::remove(path);
}

TEST_CASE("deterministic serialization") {
    std::mt19937_64 rng(303);
    auto records = random_records(rng, 200);
    auto path_a = temp_file("cuspcount_det_a.txt");
    auto path_b = temp_file("cuspcount_det_b.txt");
    store::save(path_a, records);
    std::shuffle(records.begin(), records.end(), rng);
    store::save(path_b, records);
    CHECK(slurp(path_a) == slurp(path_b));
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
}

TEST_CASE("header and fingerprint validation") {
    auto path = temp_file("cuspcount_header.txt");

    {
        std::ofstream out(path, std::ios::trunc);
        out << "cuspcount-cache v0\n";
    }
    CHECK_THROWS_AS(store::load(path), StoreError);

    {
        std::ofstream out(path, std::ios::trunc);
        out << store::kHeader << "\nfingerprint deadbeefdeadbeef\n";
    }
    CHECK_THROWS_AS(store::load(path), StoreError);

    {
        std::ofstream out(path, std::ios::trunc);
        out << store::kHeader << "\nfingerprint " << ring::presentation_fingerprint() << "\n"
            << "N 1 4 0 1 2\n";
    }
    auto loaded = store::load(path);
    REQUIRE(loaded.size() == 1);
    CHECK(loaded[0].kind == RecordKind::BaseNumber);
    CHECK(loaded[0].key == std::vector<int>{1, 4, 0, 1});
    CHECK(loaded[0].value == 2);
    std::filesystem::remove(path);
}

TEST_CASE("parse errors carry line numbers") {
    auto path = temp_file("cuspcount_parse.txt");
    auto header = std::string(store::kHeader) + "\nfingerprint " +
                  ring::presentation_fingerprint() + "\n";

    auto expect_line = [&](const std::string& body, long line) {
        std::ofstream(path, std::ios::trunc) << header << body;
        try {
            store::load(path);
            FAIL("expected a StoreError");
        } catch (const StoreError& e) {
            CHECK(e.line_number == line);
        }
    };

    expect_line("X 1 2 3 4 5\n", 3);              // unknown kind
    expect_line("N 1 4 0 2\n", 3);                // truncated key / missing value
    expect_line("N 1 4 0 1 2/0\n", 3);            // bad denominator
    expect_line("N 1 4 0 1 2 9\n", 3);            // trailing tokens
    expect_line("N 1 4 0 1 2\nN 1 4 0 1 3\n", 4); // conflicting duplicate
    std::filesystem::remove(path);
}

TEST_CASE("duplicate keys with equal values are tolerated") {
    auto path = temp_file("cuspcount_dupe.txt");
    std::vector<Record> records = {{RecordKind::BaseNumber, {1, 4, 0, 1}, Rat(2)},
                                   {RecordKind::BaseNumber, {1, 4, 0, 1}, Rat(2)}};
    store::save(path, records);
    CHECK(store::load(path).size() == 1);

    records[1].value = 3;
    CHECK_THROWS_AS(store::save(path, records), StoreError);
    std::filesystem::remove(path);
}

TEST_CASE("atomic writes leave no partial file behind") {
    auto path = temp_file("cuspcount_atomic.txt");
    store::save(path, {{RecordKind::BaseNumber, {1, 4, 0, 1}, Rat(2)}});
    CHECK(store::load(path).size() == 1);
    CHECK(!std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove(path);
}
