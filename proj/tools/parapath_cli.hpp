// Copyright (c) parapath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parapath/gadgets.hpp"
#include "parapath/io.hpp"
#include "parapath/oracle.hpp"
#include "parapath/pgpp.hpp"
#include "parapath/plot.hpp"
#include "parapath/random_instance.hpp"
#include "parapath/solver.hpp"

namespace parapath {
namespace cli {

// Exit codes: 0 ok, 2 validation/parse, 3 resource cap, 4 I/O.
struct IoFailure {
    std::string what;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure{"cannot open " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoFailure{"read failed for " + path};
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure{"cannot create " + path};
    out << content;
    out.flush();
    if (!out) throw IoFailure{"write failed for " + path};
}

inline io::json parse_json(const std::string& text, const std::string& what) {
    io::json j = io::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::ParseError, what + " is not valid JSON");
    return j;
}

inline Rational parse_cli_rational(const std::string& text, const std::string& flag) {
    auto r = parse_rational(text);
    if (!r) fail(ErrorCode::InvalidArgument, flag + ": bad rational \"" + text + "\"");
    return *r;
}

inline std::vector<Integer> parse_elements(const std::string& text) {
    std::vector<Integer> out;
    std::string item;
    std::istringstream ss(text);
    while (std::getline(ss, item, ',')) {
        auto r = parse_rational(item);
        if (!r || denominator(*r) != 1)
            fail(ErrorCode::InvalidArgument, "--elements: bad integer \"" + item + "\"");
        out.push_back(numerator(*r));
    }
    if (out.empty()) fail(ErrorCode::EmptySet, "--elements is empty");
    return out;
}

inline std::pair<Rational, Rational> parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        fail(ErrorCode::InvalidArgument, "--x-range must be LO:HI");
    Rational lo = parse_cli_rational(text.substr(0, colon), "--x-range");
    Rational hi = parse_cli_rational(text.substr(colon + 1), "--x-range");
    if (!(lo < hi)) fail(ErrorCode::InvalidArgument, "--x-range must be increasing");
    return {std::move(lo), std::move(hi)};
}

inline std::vector<long long> parse_durations(const io::json& j) {
    io::detail::check_keys(j, "durations file", {"durations"});
    const io::json& arr = io::detail::field(j, "durations file", "durations");
    if (!arr.is_array()) fail(ErrorCode::ParseError, "durations must be an array");
    std::vector<long long> out;
    for (const auto& d : arr) {
        if (!d.is_number_integer() && !d.is_number_unsigned())
            fail(ErrorCode::ParseError, "durations must be integers");
        out.push_back(d.get<long long>());
    }
    return out;
}

inline std::string path_cost_json(const Path& path, const Rational& cost) {
    io::json out;
    out["path"] = path;
    out["cost"] = to_string(cost);
    return out.dump();
}

// Quasi-polynomial certifier: entries <= (8v)^(log2 v), compared in logs
// (the bound itself is irrational; the margin is far beyond double noise).
inline bool within_quasipoly_bound(std::uint64_t entries, int vertices) {
    double lhs = std::log2(static_cast<double>(entries));
    double rhs = std::log2(static_cast<double>(vertices)) *
                 std::log2(8.0 * static_cast<double>(vertices));
    return lhs <= rhs + 1e-9;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"parametric path problems on DAGs: exact solving, preprocessing, gadgets"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance at a concrete x0");
    std::string solve_input, solve_x0, solve_durations;
    long long solve_budget = 0;
    bool solve_oracle = false;
    std::uint64_t solve_cap = oracle::kDefaultPathCap;
    solve->add_option("--input", solve_input, "instance file")->required();
    solve->add_option("--x0", solve_x0, "initial parameter (overrides the file)");
    solve->add_option("--budget", solve_budget, "time budget T");
    solve->add_option("--durations", solve_durations, "durations file (needed with --budget)");
    solve->add_flag("--oracle", solve_oracle, "brute force over all paths");
    solve->add_option("--cap", solve_cap, "path cap for --oracle");

    // preprocess
    auto* preprocess = app.add_subcommand("preprocess", "build the x0 -> optimal path table");
    std::string pre_input, pre_output;
    std::uint64_t pre_cap = oracle::kDefaultPathCap;
    preprocess->add_option("--input", pre_input, "instance file")->required();
    preprocess->add_option("--output", pre_output, "table file")->required();
    preprocess->add_option("--cap", pre_cap, "path cap for piecewise instances");

    // query
    auto* query_cmd = app.add_subcommand("query", "look up the optimal path for an x0");
    std::string query_table, query_x0;
    query_cmd->add_option("--table", query_table, "table file")->required();
    query_cmd->add_option("--x0", query_x0, "parameter value")->required();

    // gadget
    auto* gadget = app.add_subcommand("gadget", "generate a hardness/lower-bound instance");
    gadget->require_subcommand(1);
    auto* sp = gadget->add_subcommand("set-partition", "equal-sum partition instance");
    std::string sp_elements, sp_epsilon = "0", sp_delta = "0", sp_last = "abs", sp_output;
    sp->add_option("--elements", sp_elements, "comma-separated nonzero integers")->required();
    sp->add_option("--epsilon", sp_epsilon, "multiplicative approximation factor (metadata)");
    sp->add_option("--delta", sp_delta, "additive approximation term");
    sp->add_option("--last-edge", sp_last, "abs | square");
    sp->add_option("--output", sp_output, "instance file")->required();
    auto* pp = gadget->add_subcommand("product-partition", "equal-product partition instance");
    std::string pp_elements, pp_output;
    pp->add_option("--elements", pp_elements, "comma-separated positive integers")->required();
    pp->add_option("--output", pp_output, "instance file")->required();
    auto* lb = gadget->add_subcommand("lowerbound", "exponential-table layered instance");
    int lb_n = 0;
    std::string lb_output;
    lb->add_option("-n,--n", lb_n, "number of layers")->required();
    lb->add_option("--output", lb_output, "instance file")->required();

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "emit CSV samples or an SVG figure");
    std::string plot_input, plot_table, plot_output, plot_range = "0:1";
    int plot_samples = 256;
    std::uint64_t plot_cap = oracle::kDefaultPathCap;
    plot_cmd->add_option("--input", plot_input, "instance file (all path curves + envelope)");
    plot_cmd->add_option("--table", plot_table, "table file (envelope only)");
    plot_cmd->add_option("--output", plot_output, "output .svg or .csv")->required();
    plot_cmd->add_option("--x-range", plot_range, "LO:HI sampling range");
    plot_cmd->add_option("--samples", plot_samples, "number of sample points");
    plot_cmd->add_option("--cap", plot_cap, "path cap");

    // bench
    auto* bench = app.add_subcommand("bench", "measurements");
    bench->require_subcommand(1);
    auto* pieces = bench->add_subcommand("pieces", "table size vs n, with bound checks");
    std::string bench_family = "lowerbound", bench_output;
    int bench_nmax = 6;
    std::uint64_t bench_seed = 1, bench_cap = oracle::kDefaultPathCap;
    pieces->add_option("--family", bench_family, "lowerbound | random");
    pieces->add_option("--n-max", bench_nmax, "largest n")->required();
    pieces->add_option("--seed", bench_seed, "random family seed");
    pieces->add_option("--cap", bench_cap, "path cap");
    pieces->add_option("--output", bench_output, "CSV file (default stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("parapath");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*solve) {
            GppInstance inst =
                io::instance_from_json(detail::parse_json(detail::read_file(solve_input), "input"));
            if (solve_oracle && (solve->count("--budget") || !solve_durations.empty()))
                fail(ErrorCode::InvalidArgument, "--oracle does not support time budgets");
            if (solve_oracle) {
                std::vector<Rational> x0;
                if (!solve_x0.empty()) {
                    if (!inst.is_scalar())
                        fail(ErrorCode::InvalidArgument, "--x0 is scalar; vector x0 must be in the file");
                    x0 = {detail::parse_cli_rational(solve_x0, "--x0")};
                } else if (inst.x0) {
                    x0 = *inst.x0;
                } else {
                    fail(ErrorCode::InvalidArgument, "no x0: pass --x0 or store it in the file");
                }
                auto [path, cost] = oracle::best_path(inst, x0, solve_cap);
                out << detail::path_cost_json(path, cost) << "\n";
                return 0;
            }
            if (!inst.is_scalar())
                fail(ErrorCode::NonAffineWeight, "vector instances need --oracle");
            Rational x0;
            if (!solve_x0.empty())
                x0 = detail::parse_cli_rational(solve_x0, "--x0");
            else if (inst.x0)
                x0 = (*inst.x0)[0];
            else
                fail(ErrorCode::InvalidArgument, "no x0: pass --x0 or store it in the file");
            SolveResult res;
            if (solve->count("--budget") || !solve_durations.empty()) {
                if (!solve->count("--budget") || solve_durations.empty())
                    fail(ErrorCode::InvalidArgument, "--budget and --durations go together");
                auto durations = detail::parse_durations(
                    detail::parse_json(detail::read_file(solve_durations), "durations"));
                res = solve_scalar_linear_budgeted(inst, x0, durations, solve_budget);
            } else {
                res = solve_scalar_linear(inst, x0);
            }
            if (res.zero_liquidation_warning)
                err << "warning: L = 0, every path has cost 0\n";
            out << detail::path_cost_json(res.path, res.cost) << "\n";
            return 0;
        }

        if (*preprocess) {
            GppInstance inst =
                io::instance_from_json(detail::parse_json(detail::read_file(pre_input), "input"));
            if (!inst.is_scalar())
                fail(ErrorCode::NonAffineWeight, "preprocessing is scalar-only");
            pgpp::PgppTable table =
                inst.all_affine() ? pgpp::build_table(inst) : pgpp::build_table_oracle(inst, pre_cap);
            detail::write_file(pre_output, io::table_to_json(table).dump(2) + "\n");
            io::json summary;
            summary["entries"] = table.entries.size();
            summary["paths"] = pgpp::distinct_witness_count(table);
            out << summary.dump() << "\n";
            return 0;
        }

        if (*query_cmd) {
            pgpp::PgppTable table =
                io::table_from_json(detail::parse_json(detail::read_file(query_table), "table"));
            pgpp::QueryResult res =
                pgpp::query(table, detail::parse_cli_rational(query_x0, "--x0"));
            out << detail::path_cost_json(res.path, res.cost) << "\n";
            return 0;
        }

        if (*gadget) {
            GppInstance* made = nullptr;
            io::json summary;
            GppInstance holder{Dag(2, 0, 1, {{0, 1}}), ScalarWeights{AffineWeight{1, 0}},
                               {Rational(1)}, std::nullopt};
            std::string output;
            if (*sp) {
                gadgets::LastEdge last;
                if (sp_last == "abs")
                    last = gadgets::LastEdge::Abs;
                else if (sp_last == "square")
                    last = gadgets::LastEdge::Square;
                else
                    fail(ErrorCode::InvalidArgument, "--last-edge must be abs or square");
                gadgets::SetPartitionGadget g = gadgets::set_partition_gadget(
                    detail::parse_elements(sp_elements),
                    detail::parse_cli_rational(sp_epsilon, "--epsilon"),
                    detail::parse_cli_rational(sp_delta, "--delta"), last);
                holder = std::move(g.instance);
                made = &holder;
                output = sp_output;
                summary["scale"] = g.scale.str();
            } else if (*pp) {
                holder = gadgets::product_partition_gadget(detail::parse_elements(pp_elements));
                made = &holder;
                output = pp_output;
            } else {
                holder = gadgets::lowerbound_instance(lb_n);
                made = &holder;
                output = lb_output;
            }
            summary["vertices"] = made->dag.vertex_count();
            summary["edges"] = made->dag.edge_count();
            detail::write_file(output, io::instance_to_json(*made).dump(2) + "\n");
            out << summary.dump() << "\n";
            return 0;
        }

        if (*plot_cmd) {
            if (plot_input.empty() == plot_table.empty())
                fail(ErrorCode::InvalidArgument, "pass exactly one of --input / --table");
            std::pair<Rational, Rational> range = detail::parse_range(plot_range);
            const Rational& lo = range.first;
            const Rational& hi = range.second;
            plot::PlotData data = [&] {
                if (!plot_input.empty()) {
                    GppInstance inst = io::instance_from_json(
                        detail::parse_json(detail::read_file(plot_input), "input"));
                    return plot::sample_instance(inst, lo, hi, plot_samples, plot_cap);
                }
                pgpp::PgppTable table = io::table_from_json(
                    detail::parse_json(detail::read_file(plot_table), "table"));
                return plot::sample_table(table, lo, hi, plot_samples);
            }();
            if (plot_output.size() >= 4 && plot_output.substr(plot_output.size() - 4) == ".svg")
                detail::write_file(plot_output, plot::to_svg(data));
            else if (plot_output.size() >= 4 &&
                     plot_output.substr(plot_output.size() - 4) == ".csv")
                detail::write_file(plot_output, plot::to_csv(data));
            else
                fail(ErrorCode::InvalidArgument, "--output must end in .svg or .csv");
            return 0;
        }

        if (*bench) {
            std::string csv = "n,vertices,paths,pieces,wall_ms\n";
            std::uint64_t max_pieces = 0;
            for (int n = 1; n <= bench_nmax; ++n) {
                GppInstance inst = [&] {
                    if (bench_family == "lowerbound") return gadgets::lowerbound_instance(n);
                    if (bench_family != "random")
                        fail(ErrorCode::InvalidArgument, "--family must be lowerbound or random");
                    std::mt19937_64 rng(bench_seed + static_cast<std::uint64_t>(n));
                    RandomInstanceOptions opt;
                    opt.min_vertices = opt.max_vertices = std::max(2, n);
                    opt.max_edges = 3 * std::max(2, n);
                    opt.max_paths = bench_cap;
                    opt.unit_liquidation = true;
                    return random_affine_instance(rng, opt);
                }();
                auto t0 = std::chrono::steady_clock::now();
                pgpp::PgppTable table = inst.all_affine()
                                            ? pgpp::build_table(inst)
                                            : pgpp::build_table_oracle(inst, bench_cap);
                auto t1 = std::chrono::steady_clock::now();
                double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                std::uint64_t paths = count_paths(inst.dag);
                // "pieces" counts the distinct optimal paths the table
                // switches between (= entry count for affine instances).
                std::uint64_t pieces = pgpp::distinct_witness_count(table);
                max_pieces = std::max(max_pieces, pieces);
                if (bench_family == "lowerbound" && pieces != (std::uint64_t(1) << n))
                    fail(ErrorCode::ShapeViolation,
                         "lowerbound n=" + std::to_string(n) + " has " + std::to_string(pieces) +
                             " optimal paths, expected 2^n");
                if (!detail::within_quasipoly_bound(table.entries.size(),
                                                    inst.dag.vertex_count()))
                    fail(ErrorCode::ShapeViolation,
                         "quasi-polynomial bound violated at n=" + std::to_string(n));
                char row[160];
                std::snprintf(row, sizeof(row), "%d,%d,%llu,%llu,%.3f\n", n,
                              inst.dag.vertex_count(),
                              static_cast<unsigned long long>(paths),
                              static_cast<unsigned long long>(pieces), ms);
                csv += row;
            }
            err << "max pieces observed: " << max_pieces << "\n";
            if (bench_output.empty())
                out << csv;
            else
                detail::write_file(bench_output, csv);
            return 0;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == ErrorCode::TooManyPaths ? 3 : 2;
    } catch (const IoFailure& e) {
        err << "I/O error: " << e.what << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace cli
}  // namespace parapath
