// Command-line front end: exact counts of rational planar curves in P^3 with
// a cusp, plus the base characteristic numbers and tautological integrals the
// recursion runs on.
//
// Exit codes: 0 success, 1 verification failure, 2 argument validation,
// 3 engine or cache failure.

#include "cuspcount/cusp_pipeline.hpp"
#include "cuspcount/gw_base.hpp"
#include "cuspcount/numeric.hpp"
#include "cuspcount/store.hpp"
#include "cuspcount/taut.hpp"
#include "cuspcount/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using cuspcount::Int;
using cuspcount::Rat;
using json = nlohmann::json;

enum class Format { Text, Json, Csv };

struct CommonOptions {
    std::string format = "text";
    std::string provider = "engine";
    std::string cache_path;
    std::string table_path;
    bool allow_d1 = false;
    bool no_consistency_check = false;
    int jobs = 1;

    Format parsed_format() const {
        if (format == "text") return Format::Text;
        if (format == "json") return Format::Json;
        if (format == "csv") return Format::Csv;
        throw cuspcount::ValidationError("unknown format: " + format);
    }

    std::optional<std::filesystem::path> resolved_cache() const {
        if (!cache_path.empty()) return std::filesystem::path(cache_path);
        if (const char* env = std::getenv("CUSPCOUNT_CACHE"); env && *env)
            return std::filesystem::path(env);
        return std::nullopt;
    }

    cuspcount::gw::ProviderConfig provider_config() const {
        cuspcount::gw::ProviderConfig cfg;
        if (provider == "engine")
            cfg.mode = cuspcount::gw::ProviderConfig::Mode::Engine;
        else if (provider == "table")
            cfg.mode = cuspcount::gw::ProviderConfig::Mode::TableImport;
        else if (provider == "hybrid")
            cfg.mode = cuspcount::gw::ProviderConfig::Mode::Hybrid;
        else
            throw cuspcount::ValidationError("unknown provider: " + provider);
        if (!table_path.empty())
            cfg.table_path = std::filesystem::path(table_path);
        else if (cfg.mode != cuspcount::gw::ProviderConfig::Mode::Engine)
            throw cuspcount::ValidationError("--provider " + provider + " requires --table");
        cfg.consistency_check = !no_consistency_check;
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--provider", opts.provider, "Base-number provider: engine, table or hybrid")
        ->check(CLI::IsMember({"engine", "table", "hybrid"}));
    cmd->add_option("--cache", opts.cache_path,
                    "Memo cache file (default: $CUSPCOUNT_CACHE), loaded before and saved after");
    cmd->add_option("--table", opts.table_path, "Imported base-number table for table/hybrid mode");
    cmd->add_flag("--allow-d1", opts.allow_d1, "Evaluate the excluded degree-1 case anyway");
    cmd->add_flag("--no-consistency-check", opts.no_consistency_check,
                  "Skip the degree-1 Schubert oracle assertions");
    cmd->add_option("--jobs", opts.jobs, "Worker threads for independent keys")->check(CLI::PositiveNumber);
}

// Engine state shared by all subcommands: provider + tautological calculus,
// with the cache loaded on startup and written back on success.
struct Session {
    explicit Session(const CommonOptions& opts)
        : options(opts), provider(opts.provider_config()), calculus(provider) {
        if (auto path = opts.resolved_cache(); path && std::filesystem::exists(*path)) {
            auto records = cuspcount::store::load(*path);
            provider.import_cache_records(records);
            calculus.import_cache_records(records);
        }
    }

    void save_cache() {
        auto path = options.resolved_cache();
        if (!path) return;
        auto records = provider.export_base_records();
        auto phi = calculus.export_phi_records();
        records.insert(records.end(), phi.begin(), phi.end());
        cuspcount::store::save(*path, std::move(records));
    }

    CommonOptions options;
    cuspcount::gw::Provider provider;
    cuspcount::taut::Calculus calculus;
};

json result_to_json(const cuspcount::pipeline::CuspResult& res) {
    // numeric fields as decimal strings: counts outgrow 64-bit quickly
    return json{{"d", res.d},
                {"r", res.r},
                {"s", res.s},
                {"euler", cuspcount::rational_to_string(res.euler)},
                {"boundary", cuspcount::rational_to_string(res.boundary)},
                {"count", res.count.str()}};
}

void print_result_csv_row(std::ostream& os, const cuspcount::pipeline::CuspResult& res) {
    os << res.d << ',' << res.r << ',' << res.s << ',' << cuspcount::rational_to_string(res.euler)
       << ',' << cuspcount::rational_to_string(res.boundary) << ',' << res.count.str() << '\n';
}

int run_compute(Session& session, int d, int r, int s) {
    auto res = cuspcount::pipeline::cusp_count(session.calculus, d, r, s, session.options.allow_d1);
    switch (session.options.parsed_format()) {
        case Format::Text:
            std::cout << "C_" << d << "(" << r << "," << s << ") = " << res.count.str()
                      << "  [euler " << cuspcount::rational_to_string(res.euler) << ", boundary "
                      << cuspcount::rational_to_string(res.boundary) << "]\n";
            break;
        case Format::Json:
            std::cout << result_to_json(res).dump(2) << '\n';
            break;
        case Format::Csv:
            std::cout << "d,r,s,euler,boundary,count\n";
            print_result_csv_row(std::cout, res);
            break;
    }
    session.save_cache();
    return 0;
}

int run_table(Session& session, int d) {
    auto rows = cuspcount::pipeline::degree_table(session.calculus, d, session.options.allow_d1,
                                                  session.options.jobs);
    switch (session.options.parsed_format()) {
        case Format::Text:
            std::cout << "degree " << d << " (lines + 2*points = " << 3 * d + 1 << ")\n";
            std::cout << "  lines  points  count\n";
            for (const auto& row : rows) {
                std::printf("  %5d  %6d  %s\n", row.r, row.s, row.count.str().c_str());
            }
            break;
        case Format::Json: {
            json rows_json = json::array();
            for (const auto& row : rows) rows_json.push_back(result_to_json(row));
            std::cout << json{{"degree", d}, {"rows", rows_json}}.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            std::cout << "d,r,s,euler,boundary,count\n";
            for (const auto& row : rows) print_result_csv_row(std::cout, row);
            break;
    }
    session.save_cache();
    return 0;
}

int run_base(Session& session, int d, int r, int s, int theta) {
    Int value = session.provider.base_number(d, r, s, theta);
    switch (session.options.parsed_format()) {
        case Format::Text:
            std::cout << "N_" << d << "(" << r << "," << s << "," << theta << ") = " << value.str()
                      << '\n';
            break;
        case Format::Json:
            std::cout << json{{"d", d}, {"r", r}, {"s", s}, {"theta", theta}, {"value", value.str()}}
                             .dump(2)
                      << '\n';
            break;
        case Format::Csv:
            std::cout << "d,r,s,theta,value\n"
                      << d << ',' << r << ',' << s << ',' << theta << ',' << value.str() << '\n';
            break;
    }
    session.save_cache();
    return 0;
}

int run_phi(Session& session, int d, int i, int j, int r, int s, int theta) {
    Rat value = session.calculus.phi(d, i, j, r, s, theta);
    std::string text = cuspcount::rational_to_string(value);
    switch (session.options.parsed_format()) {
        case Format::Text:
            std::cout << "Phi_" << d << "(" << i << "," << j << "," << r << "," << s << ","
                      << theta << ") = " << text << '\n';
            break;
        case Format::Json:
            std::cout << json{{"d", d}, {"i", i},         {"j", j},
                              {"r", r}, {"s", s},         {"theta", theta},
                              {"value", text}}
                             .dump(2)
                      << '\n';
            break;
        case Format::Csv:
            std::cout << "d,i,j,r,s,theta,value\n"
                      << d << ',' << i << ',' << j << ',' << r << ',' << s << ',' << theta << ','
                      << text << '\n';
            break;
    }
    session.save_cache();
    return 0;
}

int run_verify(Session& session, int max_degree) {
    auto checks = cuspcount::verify::run(session.calculus, max_degree);
    bool all_pass = true;
    for (const auto& check : checks) {
        all_pass = all_pass && check.pass;
        std::printf("%-58s %s (%.1f ms)\n", check.name.c_str(), check.pass ? "ok" : "FAIL",
                    check.millis);
        if (!check.pass) std::printf("    %s\n", check.detail.c_str());
    }
    if (all_pass) session.save_cache();
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic numbers of rational planar curves in P^3 with a cusp"};
    app.require_subcommand(1);

    CommonOptions opts;
    int degree = 0, lines = 0, points = 0, theta = 0, level = 0, ev_power = 0, max_degree = 4;

    CLI::App* compute = app.add_subcommand("compute", "One count C_d(r, s)");
    compute->add_option("--degree", degree, "Curve degree d")->required();
    compute->add_option("--lines", lines, "Number of generic line conditions r")->required();
    compute->add_option("--points", points, "Number of generic point conditions s")->required();
    add_common(compute, opts);

    CLI::App* table = app.add_subcommand("table", "All counts for one degree");
    table->add_option("--degree", degree, "Curve degree d")->required();
    add_common(table, opts);

    CLI::App* base = app.add_subcommand("base", "Base characteristic number N_d(r, s, theta)");
    base->add_option("--degree", degree, "Curve degree d")->required();
    base->add_option("--lines", lines, "Line conditions r")->required();
    base->add_option("--points", points, "Point conditions s")->required();
    base->add_option("--theta", theta, "Plane-constraint exponent");
    add_common(base, opts);

    CLI::App* phi = app.add_subcommand("phi", "Tautological number Phi_d(i, j, r, s, theta)");
    phi->add_option("--degree", degree, "Curve degree d")->required();
    phi->add_option("--level", level, "Power i of c1(L*)")->required();
    phi->add_option("--ev", ev_power, "Power j of ev*H")->required();
    phi->add_option("--lines", lines, "Line conditions r")->required();
    phi->add_option("--points", points, "Point conditions s")->required();
    phi->add_option("--theta", theta, "Plane-constraint exponent");
    add_common(phi, opts);

    CLI::App* verify = app.add_subcommand("verify", "Run the low-degree verification suite");
    verify->add_option("--max-degree", max_degree, "Verify through this degree (default 4)");
    add_common(verify, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Session session(opts);
        if (compute->parsed()) return run_compute(session, degree, lines, points);
        if (table->parsed()) return run_table(session, degree);
        if (base->parsed()) return run_base(session, degree, lines, points, theta);
        if (phi->parsed()) return run_phi(session, degree, level, ev_power, lines, points, theta);
        if (verify->parsed()) return run_verify(session, max_degree);
        return 2;
    } catch (const cuspcount::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cuspcount::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
