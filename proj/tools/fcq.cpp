// fcq: multiple-node quadrature for Fourier-Chebyshev coefficients, with
// three computable a-priori error bounds on confocal ellipses.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
//             3 precision/convergence failure.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "fcq/table.hpp"
#include "fcq/verify.hpp"

namespace {

long default_bits() {
    if (const char* env = std::getenv("FCQ_BITS")) {
        try {
            long b = std::stol(env);
            if (b >= 64) return b;
        } catch (...) {
        }
        std::cerr << "fcq: ignoring invalid FCQ_BITS value \"" << env << "\"\n";
    }
    return 512;
}

std::vector<fcq::RowSpec> parse_row_filter(const std::string& filter) {
    std::vector<fcq::RowSpec> rows;
    std::size_t pos = 0;
    while (pos <= filter.size()) {
        std::size_t semi = filter.find(';', pos);
        std::string triplet =
            semi == std::string::npos ? filter.substr(pos) : filter.substr(pos, semi - pos);
        if (!triplet.empty()) {
            std::size_t c1 = triplet.find(',');
            std::size_t c2 = c1 == std::string::npos ? std::string::npos : triplet.find(',', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw std::invalid_argument("--rows expects n,s,omega triplets separated by ';'");
            rows.push_back({std::stol(triplet.substr(0, c1)),
                            std::stol(triplet.substr(c1 + 1, c2 - c1 - 1)),
                            triplet.substr(c2 + 1)});
        }
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (rows.empty()) throw std::invalid_argument("--rows produced no rows");
    return rows;
}

void emit_rows(const std::vector<fcq::RowResult>& rows, long bits, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& row : rows) out.push_back(fcq::row_to_json(row, bits));
        std::cout << out.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << fcq::render_csv(rows, bits);
    } else {
        std::cout << fcq::render_text(rows);
    }
}

int run_bounds(long n, long s, const std::string& omega, long bits, const std::string& format) {
    fcq::Rat w = fcq::rat_from_decimal(omega);
    if (w <= 0) throw std::invalid_argument("omega must be positive");
    fcq::PrecisionContext ctx(bits);
    fcq::RuleParams params(n, s);
    fcq::RowResult row{{n, s, omega}, std::nullopt, {}, false};
    row.report = fcq::compute_report(params, fcq::make_f0_integrand({w}), true, ctx);
    row.flags = row.report->flags;
    fcq::flag_against_golden(row, ctx);
    if (format == "json")
        std::cout << fcq::row_to_json(row, bits).dump(2) << "\n";
    else
        emit_rows({row}, bits, format);
    return 0;
}

int run_table_cmd(const std::string& rows_filter, long bits, const std::string& format) {
    std::vector<fcq::RowSpec> specs =
        rows_filter.empty() ? fcq::full_table_rows() : parse_row_filter(rows_filter);
    std::vector<fcq::RowResult> rows = fcq::run_table(specs, bits);
    emit_rows(rows, bits, format);
    return 0;
}

int run_verify(long bits) {
    fcq::PrecisionContext ctx(bits);
    std::vector<fcq::SuiteResult> suites = fcq::run_verification(ctx);
    bool all_pass = true;
    for (const auto& suite : suites) {
        std::cout << (suite.pass ? "PASS  " : "FAIL  ") << suite.name << "\n";
        for (const auto& line : suite.detail) std::cout << "      " << line << "\n";
        all_pass = all_pass && suite.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier-Chebyshev coefficient quadrature with multiple nodes: "
                 "a-priori error bounds, reference-table reproduction, and self-verification"};
    app.require_subcommand(1);

    long bits = default_bits();
    std::string format = "text";

    auto* bounds = app.add_subcommand("bounds", "Optimized error bounds for one (n, s, omega)");
    long n = 0, s = 0;
    std::string omega;
    bounds->add_option("--n", n, "Chebyshev degree (node count)")->required();
    bounds->add_option("--s", s, "half node multiplicity")->required();
    bounds->add_option("--omega", omega, "growth parameter of exp(omega z^2)")->required();
    bounds->add_option("--bits", bits, "working precision in bits");
    bounds->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    auto* table = app.add_subcommand("table", "Reproduce the 36-row reference table");
    std::string rows_filter;
    table->add_option("--rows", rows_filter, "filter: n,s,omega[;n,s,omega...]");
    table->add_option("--bits", bits, "working precision in bits");
    table->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    auto* verify = app.add_subcommand("verify", "Run the identity and scan verification suites");
    verify->add_option("--bits", bits, "working precision in bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bounds->parsed()) return run_bounds(n, s, omega, bits, format);
        if (table->parsed()) return run_table_cmd(rows_filter, bits, format);
        return run_verify(bits);
    } catch (const fcq::PrecisionError& e) {
        std::cerr << "fcq: precision failure: " << e.what() << "\n";
        return 3;
    } catch (const fcq::ConvergenceError& e) {
        std::cerr << "fcq: convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fcq: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "fcq: " << e.what() << "\n";
        return 3;
    }
}
