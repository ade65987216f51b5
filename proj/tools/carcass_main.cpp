#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "carcass/carcass.hpp"
#include "carcass/oracle.hpp"
#include "carcass/queries.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvariant = 3;

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw carcass::ParseError("cannot open " + out_path);
  out << text;
}

std::string cut_line(const carcass::VertexCut& cut, const carcass::MultiGraph& g) {
  std::string line = "cut inside:";
  for (int v : cut.inside_vertices()) line += " " + std::to_string(v + 1);
  line += " capacity: " + std::to_string(cut_capacity(g, cut));
  return line;
}

int run(int argc, char** argv) {
  CLI::App app{"connectivity structure of all Steiner mincuts"};
  app.require_subcommand(1);

  std::string graph_path;
  std::string out_path;
  bool summary = false;
  int max_enum = 20;

  auto* build = app.add_subcommand("build", "build the structure and report its shape");
  build->add_option("graph", graph_path)->required();
  build->add_flag("--summary", summary, "print key=value summary");

  auto* verify = app.add_subcommand("verify", "check every structural law against brute force");
  verify->add_option("graph", graph_path)->required();
  verify->add_option("--max-enum", max_enum, "largest n the oracle enumerates");

  int sep_u = 0, sep_v = 0;
  auto* sep = app.add_subcommand("sep", "report a Steiner mincut separating two vertices");
  sep->add_option("graph", graph_path)->required();
  sep->add_option("u", sep_u)->required();
  sep->add_option("v", sep_v)->required();

  int cut_id = 0;
  auto* strip_cmd = app.add_subcommand("strip", "summarize the strip of a minimal skeleton cut");
  strip_cmd->add_option("graph", graph_path)->required();
  strip_cmd->add_option("cut", cut_id)->required();

  int dst_s = 0, dst_t = 0;
  auto* dst = app.add_subcommand("dst", "summarize the strip of all mincuts separating s and t");
  dst->add_option("graph", graph_path)->required();
  dst->add_option("s", dst_s)->required();
  dst->add_option("t", dst_t)->required();

  std::string what;
  auto* exp = app.add_subcommand("export", "DOT/text export of a component");
  exp->add_option("graph", graph_path)->required();
  exp->add_option("--what", what, "flesh|skeleton|pi|strip:<cut-id>|dst:<s>,<t>")->required();
  exp->add_option("--out", out_path, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  carcass::SteinerContext ctx = carcass::load_graph_file(graph_path);

  if (verify->parsed()) {
    carcass::OracleReport report = carcass::enumerate_all(ctx, max_enum);
    carcass::Carcass cc = carcass::build_carcass(ctx);
    auto verdicts = carcass::check_carcass(cc.ctx, cc, report);
    std::cout << carcass::tap_format(verdicts);
    for (const auto& v : verdicts)
      if (!v.ok) return kExitInvariant;
    return kExitOk;
  }

  carcass::Carcass cc = carcass::build_carcass(ctx);

  if (build->parsed()) {
    if (summary) {
      std::cout << "lambda=" << cc.ctx.require_lambda() << " units=" << cc.flesh.unit_count()
                << " skeleton_nodes=" << cc.skeleton.node_count()
                << " skeleton_edges=" << cc.skeleton.edge_count() << "\n";
    } else {
      std::cout << "built: lambda=" << cc.ctx.require_lambda() << ", "
                << cc.valid_cuts.cuts.size() << " valid cuts, " << cc.flesh.unit_count()
                << " units, " << cc.skeleton.cycles.size() << " skeleton cycles\n";
    }
    return kExitOk;
  }

  if (sep->parsed()) {
    int n = cc.ctx.graph.vertex_count();
    if (sep_u < 1 || sep_u > n || sep_v < 1 || sep_v > n)
      throw carcass::DomainError("vertex id out of range");
    int ux = cc.flesh.unit_of.group_of(sep_u - 1);
    int uy = cc.flesh.unit_of.group_of(sep_v - 1);
    auto cut = carcass::report_separating_mincut(cc, ux, uy);
    if (!cut) {
      std::cout << "none\n";
    } else {
      std::cout << cut_line(*cut, cc.ctx.graph) << "\n";
    }
    return kExitOk;
  }

  auto strip_summary = [&](const carcass::Strip& s) {
    std::cout << "vertices=" << s.vertex_count() << " edges=" << s.quotient.total_multiplicity()
              << " source_size=" << s.mapping.members()[s.source].size()
              << " sink_size=" << s.mapping.members()[s.sink].size() << "\n";
  };

  if (strip_cmd->parsed()) {
    auto cuts = cc.skeleton.minimal_cuts();
    if (cut_id < 0 || cut_id >= static_cast<int>(cuts.size()))
      throw carcass::DomainError("no such minimal cut");
    strip_summary(carcass::strip_for_minimal_cut(cc, cuts[cut_id]));
    return kExitOk;
  }

  if (dst->parsed()) {
    strip_summary(carcass::strip_between(cc, dst_s - 1, dst_t - 1));
    return kExitOk;
  }

  if (exp->parsed()) {
    if (what == "flesh") {
      write_out(carcass::flesh_to_dot(cc), out_path);
    } else if (what == "skeleton") {
      write_out(carcass::skeleton_to_dot(cc.skeleton), out_path);
    } else if (what == "pi") {
      write_out(carcass::projection_dump(cc), out_path);
    } else if (what.rfind("strip:", 0) == 0) {
      int id = std::stoi(what.substr(6));
      auto cuts = cc.skeleton.minimal_cuts();
      if (id < 0 || id >= static_cast<int>(cuts.size()))
        throw carcass::DomainError("no such minimal cut");
      write_out(carcass::strip_to_dot(carcass::strip_for_minimal_cut(cc, cuts[id])), out_path);
    } else if (what.rfind("dst:", 0) == 0) {
      std::string rest = what.substr(4);
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw carcass::DomainError("expected dst:<s>,<t>");
      int s = std::stoi(rest.substr(0, comma)), t = std::stoi(rest.substr(comma + 1));
      write_out(carcass::strip_to_dot(carcass::strip_between(cc, s - 1, t - 1)), out_path);
    } else {
      throw carcass::DomainError("unknown export target: " + what);
    }
    return kExitOk;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const carcass::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const carcass::InvariantBreach& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const carcass::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
