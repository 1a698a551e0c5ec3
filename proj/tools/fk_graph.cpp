// fk-graph: ideal lattice, gauge spectrum, filtered K-theory and invariant
// comparison for finite directed graphs.
//
// Exit status: 0 success, 1 parse/validation error (or failed `check`),
// 2 size cap exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fkgraph/fkgraph.hpp"

namespace {

using namespace fkgraph;

Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph_any(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

PointSet parse_pointset(const std::string& text, const SpectrumSpace& sp) {
  if (text == "all") return sp.all();
  PointSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long p = 0;
    try {
      p = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || p >= sp.size()) throw PreconditionError("bad point index '" + item + "' in --subquotient");
    out.insert(p);
  }
  if (!sp.is_locally_closed(out)) throw PreconditionError("point set " + format_points(out) + " is not locally closed");
  return out;
}

long long default_budget() {
  if (const char* env = std::getenv("FK_GRAPH_BUDGET")) {
    try {
      const long long b = std::stoll(env);
      if (b >= 1) return b;
    } catch (const std::exception&) {
    }
    throw PreconditionError("FK_GRAPH_BUDGET must be a positive integer");
  }
  return CompareOptions{}.budget;
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered K-theory of graph algebras: ideal lattice, gauge spectrum, K-data and invariant comparison"};
  app.require_subcommand(1);

  std::string format = "text";
  bool dot = false;
  std::size_t vertex_cap = IdealLattice::kDefaultVertexCap;
  std::size_t point_cap = FilteredK::kDefaultPointCap;
  std::string file_a, file_b, subquotient;
  bool all_sets = false;
  bool no_unit = false;
  long long budget = 0;
  std::size_t node_cap = CompareOptions{}.node_cap;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--vertex-cap", vertex_cap, "Maximum number of vertices for lattice enumeration")
        ->check(CLI::PositiveNumber);
  };

  auto* spectrum = app.add_subcommand("spectrum", "Gauge prime spectrum with its topology");
  spectrum->add_option("graph", file_a, "Graph file")->required();
  spectrum->add_flag("--dot", dot, "Emit the specialization order as DOT");
  add_common(spectrum);

  auto* lattice = app.add_subcommand("lattice", "Lattice of admissible pairs (gauge-invariant ideals)");
  lattice->add_option("graph", file_a, "Graph file")->required();
  lattice->add_flag("--dot", dot, "Emit the Hasse diagram as DOT");
  add_common(lattice);

  auto* k = app.add_subcommand("k", "K-theory of gauge subquotients");
  k->add_option("graph", file_a, "Graph file")->required();
  k->add_option("--subquotient", subquotient, "Comma-separated point indices of a locally closed set, or 'all'");
  k->add_flag("--all", all_sets, "Every locally closed set");
  add_common(k);

  auto* cmp = app.add_subcommand("compare", "Compare the filtered ordered K-theory of two graphs");
  cmp->add_option("graph_a", file_a, "First graph file")->required();
  cmp->add_option("graph_b", file_b, "Second graph file")->required();
  cmp->add_flag("--no-unit", no_unit, "Do not require the unit class to be preserved");
  cmp->add_option("--budget", budget, "Entry bound for free-part isomorphism candidates (default 2, env FK_GRAPH_BUDGET)")
      ->check(CLI::PositiveNumber);
  cmp->add_option("--point-cap", point_cap, "Maximum spectrum size")->check(CLI::PositiveNumber);
  cmp->add_option("--node-cap", node_cap, "Maximum search nodes")->check(CLI::PositiveNumber);
  add_common(cmp);

  auto* check = app.add_subcommand("check", "Run the structural self-checks on a graph");
  check->add_option("graph", file_a, "Graph file")->required();
  check->add_option("--point-cap", point_cap, "Maximum spectrum size for the K-theory checks")->check(CLI::PositiveNumber);
  add_common(check);

  k->add_option("--point-cap", point_cap, "Maximum spectrum size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const bool json_out = format == "json";
  try {
    if (spectrum->parsed() || lattice->parsed()) {
      const Graph g = load_graph(file_a);
      const SpectrumSpace sp(enumerate_admissible_pairs(g, vertex_cap));
      if (lattice->parsed()) {
        if (dot)
          std::cout << lattice_dot(g, sp.lattice());
        else if (json_out)
          emit(lattice_json(g, sp.lattice()));
        else
          std::cout << lattice_text(g, sp.lattice());
      } else {
        if (dot)
          std::cout << spectrum_dot(g, sp);
        else if (json_out)
          emit(spectrum_json(g, sp));
        else
          std::cout << spectrum_text(g, sp);
      }
      return 0;
    }

    if (k->parsed()) {
      const Graph g = load_graph(file_a);
      const SpectrumSpace sp(enumerate_admissible_pairs(g, vertex_cap));
      if (sp.size() > point_cap)
        throw CapExceeded("spectrum has " + std::to_string(sp.size()) + " points; the cap is " + std::to_string(point_cap));
      std::vector<LocallyClosedSet> sets;
      if (all_sets)
        sets = sp.locally_closed_sets();
      else
        sets.push_back(sp.canonical(subquotient.empty() ? sp.all() : parse_pointset(subquotient, sp)));
      nlohmann::json list = nlohmann::json::array();
      for (const auto& Y : sets) {
        const KData data = k_data(g, sp, Y);
        if (json_out)
          list.push_back(kdata_json(g, Y.points, data));
        else
          std::cout << kdata_text(g, Y.points, data);
      }
      if (json_out) emit({{"subquotients", list}});
      return 0;
    }

    if (cmp->parsed()) {
      CompareOptions opts;
      opts.unital = !no_unit;
      opts.budget = budget > 0 ? budget : default_budget();
      opts.node_cap = node_cap;
      const AssembleOptions aopts{vertex_cap, point_cap};
      const FilteredK A = assemble(load_graph(file_a), aopts);
      const FilteredK B = assemble(load_graph(file_b), aopts);
      const CompareVerdict v = compare(A, B, opts);
      if (json_out)
        emit(verdict_json(A, v));
      else
        std::cout << verdict_text(A, v);
      return 0;
    }

    if (check->parsed()) {
      const Graph g = load_graph(file_a);
      CheckOptions opts;
      opts.assemble = {vertex_cap, point_cap};
      const auto reports = run_all_checks(g, opts);
      if (json_out)
        emit(reports_json(reports));
      else
        std::cout << reports_text(reports);
      const bool ok = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.ok(); });
      return ok ? 0 : 1;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "fk-graph: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "fk-graph: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
