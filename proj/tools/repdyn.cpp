// Command-line front end for the repdyn library.

#include "repdyn/repdyn.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace repdyn;

json family2_json(const Period2Family& f) {
  return json{{"C", f.C.str()}, {"D", f.D.str()}, {"type", "(L,L)"}, {"y", f.y0.str()},
              {"x", {f.x[0].str(), f.x[1].str()}}, {"verified", !f.degenerate}};
}

json family3_json(const Period3Family& f) {
  return json{{"C", f.C.str()}, {"D", f.D.str()}, {"type", "(L,L,L)"}, {"y", f.y0.str()},
              {"x", {f.cycle[0].str(), f.cycle[1].str(), f.cycle[2].str()}}, {"verified", true}};
}

int cmd_classify(int period, const std::string& cs, const std::string& ds, long height, int count) {
  const Rational C = Rational::parse(cs), D = Rational::parse(ds);
  json out = json::array();
  switch (period) {
    case 1: {
      if (C.is_integer() && D.is_integer()) {
        for (const auto& v : period1_integral(C.num(), D.num(), count))
          out.push_back(json{{"C", C.str()}, {"D", D.str()}, {"type", "(L)"}, {"x", v.x.str()}, {"y", v.y.str()}});
      } else {
        for (const auto& t : height_grid(height)) {
          if ((C + D * t * t).is_zero()) continue;
          const auto v = period1_point(C, D, t);
          out.push_back(json{{"C", C.str()}, {"D", D.str()}, {"type", "(L)"}, {"x", v.x.str()}, {"y", v.y.str()}});
          if (static_cast<int>(out.size()) >= count) break;
        }
      }
      break;
    }
    case 2:
      for (const auto& f : period2_search(C, D, height)) out.push_back(family2_json(f));
      break;
    case 3:
      for (const auto& f : period3_search(C, D, height)) out.push_back(family3_json(f));
      break;
    case 4:
      for (const auto& w : lrlr_vectors(C, D)) out.push_back(witness_json(w));
      break;
    case 5: {
      const auto rep = llrlr_analyze(C, D);
      json roots = json::array();
      for (const auto& r : rep.rational_roots) roots.push_back(r.str());
      json ws = json::array();
      for (const auto& w : rep.witnesses) ws.push_back(witness_json(w));
      std::cout << json{{"C", C.str()}, {"D", D.str()}, {"S", rep.S.str('y')}, {"degree", rep.degree},
                        {"rational_roots", roots}, {"witnesses", ws}, {"notes", rep.notes}}
                       .dump(2)
                << '\n';
      return 0;
    }
    default: throw std::invalid_argument("classify: period must be 1..5");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_quartic(long height) {
  json rep;
  rep["depressed_identity"] = depressed_identity_holds();
  {
    const auto g = depressed_generic();
    const auto& r = depressed_reduced();
    rep["reduced_forms_agree"] = equivalent(g.b2, r.b2) && equivalent(g.b1, r.b1) && equivalent(g.b0, r.b0);
  }
  const B2Report b2 = b2_curve_check();
  rep["B2"] = json{{"printed_is_b1_numerator", b2.printed_is_b1_numerator},
                   {"factors", {b2.factors[0].str(), b2.factors[1].str()}},
                   {"product_matches", b2.product_matches},
                   {"verdicts", {verdict_json(b2.verdicts[0]), verdict_json(b2.verdicts[1])}},
                   {"ok", b2.ok()}};
  const Resolvent res = resolvent_and_radicals(1, 6);
  const CubicFormulaRoot cf = cubic_formula_alpha(depressed_coeffs(1, 6));
  rep["resolvent_1_6"] = json{{"T", res.T.str('x')}, {"p", res.p.str()}, {"q", res.q.str()},
                              {"cubic_formula_alpha", static_cast<double>(cf.alpha)},
                              {"relative_residual", static_cast<double>(cf.residual)}};
  const EqualityCurveReport eq = equality_curve_check();
  rep["equality_curve"] = json{{"homogeneous_degree12", eq.homogeneous_degree12},
                               {"eliminant", eq.eliminant.str()},
                               {"divides", eq.divides},
                               {"divides_dehomogenized", eq.divides_dehomogenized},
                               {"eliminant_is_monomials_B2sq_N0cube", eq.eliminant_structure},
                               {"verdict", verdict_json(eq.verdict)}};
  const SurfaceEquations se = surface_equations();
  json hits = json::array();
  for (const auto& h : surface_search(height))
    hits.push_back(json{{"C", h.C.str()}, {"D", h.D.str()}, {"z", h.z.str()}, {"n", h.n.str()},
                        {"within_bound", h.within_bound}});
  rep["surface"] = json{{"E1", se.E1.str()}, {"E2", se.E2.str()}, {"identities", surface_identity_holds()},
                        {"height", height}, {"hits", hits}};
  std::cout << rep.dump(2) << '\n';
  return 0;
}

int cmd_graph(const std::string& cs, const std::string& ds, const std::string& xs, const std::string& ys,
              std::size_t max_vertices, const std::string& dot) {
  const Form<Rational> f(Rational::parse(cs), Rational::parse(ds));
  const auto g = orbit_graph(f, Vec2<Rational>{Rational::parse(xs), Rational::parse(ys)}, max_vertices);
  const std::string text = g.to_dot();
  if (dot.empty() || dot == "-") {
    std::cout << text;
  } else {
    std::ofstream os(dot);
    if (!os) throw std::runtime_error("cannot write '" + dot + "'");
    os << text;
    std::cerr << g.vertices.size() << " vertices, " << g.edges.size() << " edges"
              << (g.truncated ? " (truncated)" : "") << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic vectors of replacement dynamics for C x^2 + D y^2"};
  app.require_subcommand(1);

  int classes_n = 0, classes_m = 2;
  auto* classes = app.add_subcommand("classes", "canonical type classes of length N");
  classes->add_option("N", classes_n, "word length")->required()->check(CLI::PositiveNumber);
  classes->add_option("--m", classes_m, "alphabet size")->check(CLI::PositiveNumber);

  std::string phi_type, phi_side = "L";
  std::vector<std::string> phi_spec;
  auto* phicmd = app.add_subcommand("phi", "dynamical modular polynomial");
  phicmd->add_option("TYPE", phi_type, "type word such as LLRLR")->required();
  phicmd->add_option("--side", phi_side, "L or R")->check(CLI::IsMember({"L", "R"}));
  phicmd->add_option("--spec", phi_spec, "specialize at C D")->expected(2);

  auto* table1 = app.add_subcommand("table1", "degree table for periods up to 5 (CSV)");

  int cl_period = 4, cl_count = 5;
  long cl_height = 30;
  std::string cl_c, cl_d;
  auto* classify = app.add_subcommand("classify", "periodic vectors of a given period");
  classify->add_option("--period", cl_period, "1..5")->required()->check(CLI::Range(1, 5));
  classify->add_option("--C", cl_c, "C as a rational")->required();
  classify->add_option("--D", cl_d, "D as a rational")->required();
  classify->add_option("--height", cl_height, "parameter height bound for periods 1-3");
  classify->add_option("--count", cl_count, "number of period-1 vectors");

  std::string pell_e;
  auto* pell = app.add_subcommand("pell", "fundamental solution of X^2 - E Y^2 = 1");
  pell->add_option("E", pell_e, "non-square positive integer")->required();

  SweepConfig cfg;
  cfg.height_bound = 0;
  cfg.workers = default_workers();
  std::string target = "LRLR-rational";
  bool paper_bound = false;
  auto* sw = app.add_subcommand("sweep", "height-bounded search");
  sw->add_option("--target", target, "LRLR-integer, LRLR-rational, LLRLR-rational or surface")->required();
  sw->add_option("--height", cfg.height_bound, "height bound");
  sw->add_flag("--paper-bound", paper_bound, "use the long-running bounds 1000/100/50/100");
  sw->add_option("--workers", cfg.workers, "worker threads (default REPDYN_WORKERS or 1)")->check(CLI::PositiveNumber);
  sw->add_option("--checkpoint", cfg.checkpoint_path, "checkpoint JSON path");
  sw->add_option("--output", cfg.output_path, "JSON-lines record file");
  sw->add_flag("--resume", cfg.resume, "continue from the checkpoint");
  sw->add_flag("--all-cells", cfg.all_cells, "emit a record for every cell");
  sw->add_option("--checkpoint-every", cfg.checkpoint_every, "cells between checkpoints");
  sw->add_option("--max-cells", cfg.max_cells, "stop after this many cells");

  long qa_height = 20;
  auto* qa = app.add_subcommand("quartic-analysis", "depressed quartic, B2, equality curve, surface");
  qa->add_option("--height", qa_height, "surface search height bound");

  auto* ve = app.add_subcommand("verify-examples", "worked-example battery");

  std::string g_c, g_d, g_x, g_y, g_dot;
  std::size_t g_max = 64;
  auto* graph = app.add_subcommand("graph", "orbit graph as DOT");
  graph->add_option("--C", g_c)->required();
  graph->add_option("--D", g_d)->required();
  graph->add_option("--x", g_x)->required();
  graph->add_option("--y", g_y)->required();
  graph->add_option("--max", g_max, "vertex cap");
  graph->add_option("--dot", g_dot, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classes) {
      const auto cls = enumerate_classes(classes_n, classes_m);
      for (const auto& c : cls) std::cout << c.canonical.str() << '\n';
      return 0;
    }
    if (*phicmd) {
      const TypeWord t = TypeWord::parse(phi_type);
      const Side s = phi_side == "L" ? Side::L : Side::R;
      if (phi_spec.empty()) std::cout << phi(t, s).str() << '\n';
      else std::cout << specialize_phi(t, s, Rational::parse(phi_spec[0]), Rational::parse(phi_spec[1])).str() << '\n';
      return 0;
    }
    if (*table1) {
      std::cout << "type,univariate,degL,degR\n";
      for (const auto& r : degree_table(5))
        std::cout << r.type.tuple_str() << ',' << (r.univariate ? "yes" : "no") << ',' << r.degL << ',' << r.degR << '\n';
      return 0;
    }
    if (*classify) return cmd_classify(cl_period, cl_c, cl_d, cl_height, cl_count);
    if (*pell) {
      const auto s = pell_fundamental(Integer(pell_e));
      std::cout << "X=" << s.X.get_str() << " Y=" << s.Y.get_str() << '\n';
      return 0;
    }
    if (*sw) {
      cfg.target = parse_target(target);
      if (paper_bound) {
        switch (cfg.target) {
          case SweepTarget::LrlrInteger: cfg.height_bound = 1000; break;
          case SweepTarget::LrlrRational: cfg.height_bound = 100; break;
          case SweepTarget::LlrlrRational: cfg.height_bound = 50; break;
          case SweepTarget::Surface: cfg.height_bound = 100; break;
        }
      }
      if (cfg.height_bound < 1) throw std::invalid_argument("sweep: give --height or --paper-bound");
      const auto sum = sweep(cfg);
      std::cout << sum.to_json().dump() << '\n';
      return sum.complete ? 0 : 3;
    }
    if (*qa) return cmd_quartic(qa_height);
    if (*ve) {
      bool all = true;
      for (const auto& c : verify_examples()) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        all = all && c.pass;
      }
      return all ? 0 : 1;
    }
    if (*graph) return cmd_graph(g_c, g_d, g_x, g_y, g_max, g_dot);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
