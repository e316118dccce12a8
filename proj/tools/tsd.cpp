// tsd: command-line front end for turn-minimal time-space diagrams.
//
// Exit codes: 0 success, 1 internal error, 2 validation failure (bad input
// file or arguments), 3 time limit reached (best order still written).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsd/tsd.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitTimeLimit = 3;

// Input problems map to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

tsd::EventGraph load_raw(const std::string& path) { return tsd::parse_event_graph(read_file(path)); }

tsd::EventGraph load_valid(const std::string& path) {
  auto g = load_raw(path);
  auto report = tsd::validate(g);
  if (!report.ok()) {
    std::cerr << tsd::report_to_json(g, report).dump(2) << "\n";
    throw tsd::InvalidGraphError(report);
  }
  return tsd::normalize(g);
}

tsd::ReduceMode parse_mode(const std::string& s) {
  if (s == "chain") return tsd::ReduceMode::chain;
  if (s == "full") return tsd::ReduceMode::full;
  throw InputError("unknown reduce mode '" + s + "'");
}

std::string sidecar_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.extension() == ".json") p.replace_extension();
  return p.string() + ".meta.json";
}

std::vector<tsd::Method> parse_methods(const std::string& list) {
  std::vector<tsd::Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(tsd::parse_method(item));
  }
  if (out.empty()) throw InputError("no methods given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turn-minimal time-space diagrams for train event graphs"};
  app.require_subcommand(1);
  std::string file, out, mode = "chain", report_path, method = "dp", formulation = "naive", graph_kind = "location";
  std::string family, order_path, style_path, methods = "dp,ilp-tw,cutplane";
  bool nice = false, no_reduce = false;
  double time_limit = 0;
  std::uint64_t seed = 0;
  std::size_t cuts = 100, reps = 5;
  std::size_t n = 6, m = 8, n_loc = 8, n_trains = 4, max_len = 6, k_chain = 2;
  double p = 0.5;

  auto* validate_cmd = app.add_subcommand("validate", "check an instance; prints the violation report");
  validate_cmd->add_option("file", file, "instance JSON")->required();

  auto* stats_cmd = app.add_subcommand("stats", "instance size summary");
  stats_cmd->add_option("file", file, "instance JSON")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "contract transit components");
  reduce_cmd->add_option("file", file, "instance JSON")->required();
  reduce_cmd->add_option("--mode", mode, "chain|full")->check(CLI::IsMember({"chain", "full"}));
  reduce_cmd->add_option("-o,--output", out, "reduced instance (default stdout)");
  reduce_cmd->add_option("--report", report_path, "contraction report JSON");

  auto* td_cmd = app.add_subcommand("treedecomp", "min-degree tree decomposition");
  td_cmd->add_option("file", file, "instance JSON")->required();
  td_cmd->add_flag("--nice", nice, "emit a nice decomposition");
  td_cmd->add_option("--graph", graph_kind, "location|augmented")->check(CLI::IsMember({"location", "augmented"}));
  td_cmd->add_option("-o,--output", out, "decomposition JSON (default stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "compute a turn-minimal order");
  solve_cmd->add_option("file", file, "instance JSON")->required();
  solve_cmd->add_option("--method", method, "brute|dp|ilp|ilp-tw|cutplane")
      ->check(CLI::IsMember({"brute", "dp", "ilp", "ilp-tw", "cutplane"}));
  solve_cmd->add_flag("--no-reduce", no_reduce, "skip the reduction");
  solve_cmd->add_option("--reduce-mode", mode, "chain|full")->check(CLI::IsMember({"chain", "full"}));
  solve_cmd->add_option("--time-limit", time_limit, "seconds (0 = none)")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--seed", seed, "recorded in the result stats");
  solve_cmd->add_option("--cuts-per-round", cuts, "cutting-plane triangles per round")->check(CLI::PositiveNumber);
  solve_cmd->add_option("-o,--output", out, "result JSON (default stdout)");

  auto* lp_cmd = app.add_subcommand("export-lp", "write the ordering ILP in LP format");
  lp_cmd->add_option("file", file, "instance JSON")->required();
  lp_cmd->add_option("--formulation", formulation, "naive|tw")->check(CLI::IsMember({"naive", "tw"}));
  lp_cmd->add_option("-o,--output", out, "LP file (default stdout)");

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--family", family, "betweenness|maxcut|corridor|random")
      ->required()
      ->check(CLI::IsMember({"betweenness", "maxcut", "corridor", "random"}));
  gen_cmd->add_option("--seed", seed, "random seed");
  gen_cmd->add_option("--n", n, "betweenness ground set size / maxcut vertices");
  gen_cmd->add_option("--m", m, "betweenness triple count");
  gen_cmd->add_option("--p", p, "maxcut edge probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--locations", n_loc, "corridor/random location count");
  gen_cmd->add_option("--trains", n_trains, "corridor/random train count");
  gen_cmd->add_option("--max-len", max_len, "random: longest train");
  gen_cmd->add_option("--k-chain", k_chain, "corridor: injected pass-through locations");
  gen_cmd->add_option("-o,--output", out, "instance JSON (sidecar <out>.meta.json)")->required();

  auto* render_cmd = app.add_subcommand("render", "draw the time-space diagram as SVG");
  render_cmd->add_option("file", file, "instance JSON")->required();
  render_cmd->add_option("--order", order_path, "result JSON holding \"order\"")->required();
  render_cmd->add_option("--style", style_path, "style JSON");
  render_cmd->add_option("-o,--output", out, "SVG file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "time methods over a directory of instances");
  bench_cmd->add_option("dir", file, "instance directory")->required();
  bench_cmd->add_option("--methods", methods, "comma-separated methods");
  bench_cmd->add_option("--reps", reps, "repetitions")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--time-limit", time_limit, "seconds per solve (0 = none)")->check(CLI::NonNegativeNumber);
  bench_cmd->add_flag("--no-reduce", no_reduce, "skip the reduction");
  bench_cmd->add_option("-o,--output", out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (validate_cmd->parsed()) {
      auto g = load_raw(file);
      auto report = tsd::validate(g);
      std::cout << tsd::report_to_json(g, report).dump(2) << "\n";
      return report.ok() ? kExitOk : kExitInvalid;
    }
    if (stats_cmd->parsed()) {
      std::cout << tsd::instance_stats(load_valid(file)).dump(2) << "\n";
      return kExitOk;
    }
    if (reduce_cmd->parsed()) {
      auto r = tsd::apply_rule_exhaustively(load_valid(file), parse_mode(mode));
      write_output(out, tsd::serialize_event_graph(r.graph));
      if (!report_path.empty()) write_output(report_path, tsd::report_to_json(r.report).dump(2) + "\n");
      return kExitOk;
    }
    if (td_cmd->parsed()) {
      auto g = load_valid(file);
      const tsd::Graph graph =
          graph_kind == "augmented" ? tsd::build_augmented(g).graph() : tsd::build_location_graph(g).graph();
      auto td = tsd::min_degree_decomposition(graph);
      auto doc = nice ? tsd::decomposition_to_json(tsd::make_nice(td), g.locations())
                      : tsd::decomposition_to_json(td, g.locations());
      write_output(out, doc.dump(2) + "\n");
      return kExitOk;
    }
    if (solve_cmd->parsed()) {
      auto g = load_valid(file);
      tsd::SolveOptions opt;
      opt.reduce = !no_reduce;
      opt.reduce_mode = parse_mode(mode);
      opt.time_limit_s = time_limit;
      opt.cuts_per_round = cuts;
      if (solve_cmd->count("--seed")) opt.seed = seed;
      auto r = tsd::solve(g, tsd::parse_method(method), opt);
      write_output(out, tsd::result_to_json(g, r).dump(2) + "\n");
      if (!r.optimal) {
        std::cerr << "time limit reached; order is the best found, not proven optimal\n";
        return kExitTimeLimit;
      }
      return kExitOk;
    }
    if (lp_cmd->parsed()) {
      auto g = load_valid(file);
      auto rm = tsd::extract_restrictions(g);
      tsd::ILPModel model;
      if (formulation == "tw") {
        const auto lg = tsd::build_location_graph(g).graph();
        model = tsd::build_ilp_tw(rm, lg, tsd::min_degree_decomposition(lg), g.locations());
      } else {
        model = tsd::build_ilp_naive(rm, g.locations());
      }
      write_output(out, tsd::export_lp(model));
      return kExitOk;
    }
    if (gen_cmd->parsed()) {
      tsd::EventGraph g;
      nlohmann::json meta;
      if (family == "betweenness") {
        auto sb = tsd::gen_satisfiable_betweenness(n, m, seed);
        g = tsd::from_betweenness(sb.instance, seed);
        meta = {{"family", family}, {"seed", seed}, {"n", n}, {"m", m}, {"hidden_order", sb.hidden_order},
                {"triples", sb.instance.triples}};
      } else if (family == "maxcut") {
        auto graph = tsd::gen_random_graph(n, p, seed);
        g = tsd::from_maxcut(graph, seed);
        meta = {{"family", family}, {"seed", seed}, {"n", n}, {"p", p}, {"edges", graph.edges()}};
      } else if (family == "corridor") {
        auto gi = tsd::gen_corridor(n_loc, n_trains, k_chain, seed);
        g = std::move(gi.graph);
        meta = std::move(gi.meta);
      } else {
        g = tsd::gen_random_event_graph(n_loc, n_trains, max_len, seed);
        meta = {{"family", family}, {"seed", seed}, {"n_loc", n_loc}, {"n_trains", n_trains}, {"max_len", max_len}};
      }
      write_output(out, tsd::serialize_event_graph(g));
      write_output(sidecar_path(out), meta.dump(2) + "\n");
      return kExitOk;
    }
    if (render_cmd->parsed()) {
      auto g = load_valid(file);
      auto doc = tsd::detail::parse_json_text(read_file(order_path));
      if (!doc.contains("order") || !doc.at("order").is_array()) throw InputError("order file lacks an \"order\" array");
      auto y = tsd::LocationOrder::from_names(g, doc.at("order").get<std::vector<std::string>>());
      tsd::RenderStyle style;
      if (!style_path.empty()) style = tsd::style_from_json(tsd::detail::parse_json_text(read_file(style_path)));
      write_output(out, tsd::render_svg(g, y, style));
      return kExitOk;
    }
    if (bench_cmd->parsed()) {
      if (!std::filesystem::is_directory(file)) throw InputError("not a directory: '" + file + "'");
      tsd::SolveOptions opt;
      opt.reduce = !no_reduce;
      opt.time_limit_s = time_limit;
      auto rows = tsd::run_bench(file, parse_methods(methods), reps, opt);
      write_output(out, tsd::bench_to_csv(rows));
      return kExitOk;
    }
  } catch (const tsd::InvalidGraphError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const tsd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const tsd::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
