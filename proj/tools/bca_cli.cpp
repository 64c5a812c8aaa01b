#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bca/classic.hpp"
#include "bca/error.hpp"
#include "bca/exact_dp.hpp"
#include "bca/fptas.hpp"
#include "bca/generators.hpp"
#include "bca/io.hpp"
#include "bca/matching_graph.hpp"
#include "bca/oracle.hpp"
#include "json.hpp"

namespace {

using namespace bca;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNone = 2;

struct Options {
  std::string instance = "-";
  std::string format = "csv";
  std::string output = "-";
  std::string plot;
  std::string emit_dir;

  std::string lambda;
  std::string target_welfare;
  std::string objective = "welfare";
  std::string value;
  std::string w, r, delta;
  std::string eps;
  bool count_only = false;

  std::string family;
  std::string list_b, list_a;
  std::string eps_construction;
  std::size_t k = 3;
  std::size_t base = 3;
  std::string targets_path;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

Instance load_instance(const Options& o) {
  if (o.instance == "-") return instance_from_json(read_all(std::cin));
  std::ifstream in(o.instance);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + o.instance);
  return instance_from_json(read_all(in));
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

Rational required(const std::string& text, const char* name) {
  if (text.empty()) throw Error(ErrorCode::ParseError, std::string("missing --") + name);
  return parse_rational(text);
}

// Plot failures only warn.
void maybe_plot(const Options& o, const std::vector<ObjectivePoint>& points, const std::string& title) {
  if (o.plot.empty()) return;
  try {
    write_text(o.plot, render_svg(points, title));
  } catch (const std::exception& e) {
    std::cerr << "warning: plot not written: " << e.what() << '\n';
  }
}

void emit_mechanisms(const Options& o, const std::vector<Mechanism>& mechanisms) {
  if (o.emit_dir.empty()) return;
  std::filesystem::create_directories(o.emit_dir);
  for (std::size_t id = 0; id < mechanisms.size(); ++id) {
    write_text((std::filesystem::path(o.emit_dir) / ("mechanism_" + std::to_string(id) + ".json")).string(),
               mechanism_to_json(mechanisms[id]) + "\n");
  }
}

void check_format(const Options& o) {
  if (o.format != "csv" && o.format != "json" && o.format != "svg") {
    throw Error(ErrorCode::ParseError, "unknown format " + o.format);
  }
}

/// Writes rows in the chosen format; ids refer to `mechanisms` when given.
void emit_curve(const Options& o, std::vector<CurveRow> rows, const std::vector<Mechanism>& mechanisms,
                const std::string& title) {
  sort_rows(rows);
  std::vector<ObjectivePoint> points;
  for (const auto& row : rows) points.push_back(row.point);
  if (o.format == "json") {
    write_text(o.output, rows_to_json(rows) + "\n");
  } else if (o.format == "svg") {
    write_text(o.output, render_svg(points, title));
  } else {
    std::ostringstream out;
    write_csv(out, rows);
    write_text(o.output, out.str());
  }
  emit_mechanisms(o, mechanisms);
  maybe_plot(o, points, title);
}

void emit_single(const Options& o, const Mechanism& m, const std::string& title) {
  if (o.format == "json") {
    write_text(o.output, mechanism_to_json(m) + "\n");
    emit_mechanisms(o, {m});
    maybe_plot(o, {m.objectives}, title);
    return;
  }
  emit_curve(o, {{m.objectives, 0}}, {m}, title);
}

std::vector<CurveRow> rows_of(const std::vector<Mechanism>& mechanisms) {
  std::vector<CurveRow> rows;
  for (std::size_t id = 0; id < mechanisms.size(); ++id) rows.push_back({mechanisms[id].objectives, id});
  return rows;
}

int run_mix(const Options& o) {
  const Instance inst = load_instance(o);
  const RandomizedMechanism mix = randomized_tradeoff(inst, required(o.target_welfare, "target-welfare"));
  std::vector<Mechanism> mechanisms;
  for (const auto& [m, weight] : mix.components) mechanisms.push_back(m);
  const ObjectivePoint expected = mix.expected();
  if (o.format == "json") {
    nlohmann::json doc;
    doc["welfare"] = format_rational(expected.welfare);
    doc["revenue"] = format_rational(expected.revenue);
    doc["components"] = nlohmann::json::array();
    for (std::size_t id = 0; id < mix.components.size(); ++id) {
      const auto& [m, weight] = mix.components[id];
      doc["components"].push_back({{"welfare", format_rational(m.objectives.welfare)},
                                   {"revenue", format_rational(m.objectives.revenue)},
                                   {"mechanism_id", id},
                                   {"weight", format_rational(weight)}});
    }
    write_text(o.output, doc.dump(2) + "\n");
  } else if (o.format == "svg") {
    write_text(o.output, render_svg({expected}, "mix"));
  } else {
    std::ostringstream out;
    out << "welfare,revenue,mechanism_id,weight\n";
    for (std::size_t id = 0; id < mix.components.size(); ++id) {
      const auto& [m, weight] = mix.components[id];
      out << format_rational(m.objectives.welfare) << ',' << format_rational(m.objectives.revenue) << ',' << id << ','
          << format_rational(weight) << '\n';
    }
    write_text(o.output, out.str());
  }
  emit_mechanisms(o, mechanisms);
  std::vector<ObjectivePoint> points{expected};
  for (const auto& m : mechanisms) points.push_back(m.objectives);
  maybe_plot(o, points, "mix");
  return kExitOk;
}

int run_exact(const Options& o) {
  const Instance inst = load_instance(o);
  Objective objective;
  if (o.objective == "welfare") {
    objective = Objective::Welfare;
  } else if (o.objective == "revenue") {
    objective = Objective::Revenue;
  } else {
    throw Error(ErrorCode::ParseError, "objective must be welfare or revenue");
  }
  const auto m = exact_witness(inst, objective, required(o.value, "value"));
  if (!m) {
    std::cerr << "no mechanism with " << o.objective << " exactly " << o.value << '\n';
    return kExitNone;
  }
  emit_single(o, *m, "exact");
  return kExitOk;
}

int run_gap(const Options& o) {
  const Instance inst = load_instance(o);
  const GapQuery q{{required(o.w, "w"), required(o.r, "r")}, required(o.delta, "delta")};
  const GapAnswer answer = gap_query(inst, q);
  if (!answer.found()) {
    std::cerr << "NoCertificate: no mechanism reaches (1+delta) times the bound in both coordinates\n";
    return kExitNone;
  }
  emit_single(o, *answer.mechanism, "gap");
  return kExitOk;
}

int run_pareto(const Options& o) {
  const Instance inst = load_instance(o);
  const EpsParetoResult res = eps_pareto(inst, required(o.eps, "eps"));
  emit_curve(o, rows_of(res.mechanisms), res.mechanisms, "eps-Pareto set");
  return kExitOk;
}

int run_oracle_pareto(const Options& o) {
  const Instance inst = load_instance(o);
  const OraclePareto res = oracle_pareto(inst);
  std::vector<Mechanism> mechanisms;
  std::vector<CurveRow> rows;
  for (const auto& entry : res.front.points) {
    rows.push_back({entry.point, mechanisms.size()});
    mechanisms.push_back(make_mechanism(res.matrices[entry.handle], inst));
  }
  emit_curve(o, rows, mechanisms, "Pareto set");
  return kExitOk;
}

int run_enumerate(const Options& o) {
  const Instance inst = load_instance(o);
  if (o.count_only) {
    write_text(o.output, std::to_string(count_feasible(inst)) + "\n");
    return kExitOk;
  }
  std::vector<Mechanism> mechanisms;
  enumerate_feasible(inst, [&](const AllocationMatrix& a) { mechanisms.push_back(make_mechanism(a, inst)); });
  emit_curve(o, rows_of(mechanisms), mechanisms, "feasible mechanisms");
  return kExitOk;
}

int run_gen(const Options& o) {
  GeneratedInstance g = [&] {
    if (o.family == "nonconvex") return gen_nonconvex();
    if (o.family == "partition-welfare") return gen_partition_welfare(parse_list(o.list_b));
    if (o.family == "partition-bicriterion") {
      std::optional<Rational> eps;
      if (!o.eps_construction.empty()) eps = parse_rational(o.eps_construction);
      return gen_partition_bicriterion(parse_list(o.list_a), eps);
    }
    if (o.family == "exponential") return gen_exponential_pareto(o.k, o.base);
    if (o.family == "binary-partition") return gen_binary_partition(parse_list(o.list_b));
    throw Error(ErrorCode::ParseError, "unknown family " + o.family);
  }();
  write_text(o.output, instance_to_json(g.instance) + "\n");
  std::string sidecar = o.targets_path;
  if (sidecar.empty() && o.output != "-") sidecar = o.output + ".targets.json";
  if (!sidecar.empty()) write_text(sidecar, targets_to_json(g) + "\n");
  return kExitOk;
}

int run_graph(const Options& o) {
  const Instance inst = load_instance(o);
  std::ostringstream out;
  write_edge_list(out, build_graph(inst));
  write_text(o.output, out.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revenue and welfare trade-offs of deterministic single-item auctions"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--instance,-i", o.instance, "Instance JSON file, '-' for stdin");
  app.add_option("--format,-f", o.format, "Output format: csv, json or svg");
  app.add_option("--output,-o", o.output, "Output file, '-' for stdout");
  app.add_option("--plot", o.plot, "Also render the points as SVG to this file");
  app.add_option("--emit-mechanisms", o.emit_dir, "Directory receiving one JSON file per mechanism id");

  auto* vickrey_cmd = app.add_subcommand("vickrey", "Second-price auction");
  auto* myerson_cmd = app.add_subcommand("myerson", "Revenue-optimal auction (independent bidders)");
  auto* lambda_cmd = app.add_subcommand("lambda", "Maximize revenue + L * welfare");
  lambda_cmd->add_option("--lambda", o.lambda, "L >= 0")->required();
  auto* mix_cmd = app.add_subcommand("mix", "Best randomized mechanism at a welfare target");
  mix_cmd->add_option("--target-welfare", o.target_welfare)->required();
  auto* exact_cmd = app.add_subcommand("exact", "Mechanism with an exact objective value (two bidders)");
  exact_cmd->add_option("--objective", o.objective, "welfare or revenue");
  exact_cmd->add_option("--value", o.value)->required();
  auto* gap_cmd = app.add_subcommand("gap", "Dominate (W, R) or certify that (1+D)(W, R) is out of reach");
  gap_cmd->add_option("--w", o.w)->required();
  gap_cmd->add_option("--r", o.r)->required();
  gap_cmd->add_option("--delta", o.delta)->required();
  auto* pareto_cmd = app.add_subcommand("pareto", "Approximate Pareto set (two bidders)");
  pareto_cmd->add_option("--eps", o.eps)->required();
  auto* oracle_cmd = app.add_subcommand("oracle-pareto", "Exact Pareto set by enumeration");
  auto* enumerate_cmd = app.add_subcommand("enumerate", "All feasible mechanisms");
  enumerate_cmd->add_flag("--count-only", o.count_only, "Print only the number of feasible mechanisms");
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("family", o.family, "nonconvex, partition-welfare, partition-bicriterion, exponential, binary-partition")
      ->required();
  gen_cmd->add_option("--b", o.list_b, "Comma-separated set for partition-welfare and binary-partition");
  gen_cmd->add_option("--a", o.list_a, "Comma-separated set for partition-bicriterion");
  gen_cmd->add_option("--eps-construction", o.eps_construction, "Light-mass parameter for partition-bicriterion");
  gen_cmd->add_option("--k", o.k, "Size of the exponential family");
  gen_cmd->add_option("--base", o.base, "Growth ratio of the exponential family");
  gen_cmd->add_option("--targets", o.targets_path, "Targets sidecar path (default: OUTPUT.targets.json)");
  auto* graph_cmd = app.add_subcommand("graph", "Matching graph of a binary instance as an edge list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    check_format(o);
    if (vickrey_cmd->parsed()) {
      emit_single(o, vickrey(load_instance(o)), "vickrey");
    } else if (myerson_cmd->parsed()) {
      emit_single(o, myerson(load_instance(o)), "myerson");
    } else if (lambda_cmd->parsed()) {
      const Instance inst = load_instance(o);
      emit_single(o, lambda_optimal(inst, parse_rational(o.lambda)), "lambda");
    } else if (mix_cmd->parsed()) {
      return run_mix(o);
    } else if (exact_cmd->parsed()) {
      return run_exact(o);
    } else if (gap_cmd->parsed()) {
      return run_gap(o);
    } else if (pareto_cmd->parsed()) {
      return run_pareto(o);
    } else if (oracle_cmd->parsed()) {
      return run_oracle_pareto(o);
    } else if (enumerate_cmd->parsed()) {
      return run_enumerate(o);
    } else if (gen_cmd->parsed()) {
      return run_gen(o);
    } else if (graph_cmd->parsed()) {
      return run_graph(o);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
