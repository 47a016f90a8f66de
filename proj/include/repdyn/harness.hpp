#pragma once

/**
 * @file harness.hpp
 * @brief Height-bounded sweeps over (C, D) with JSON-lines output and atomic
 * checkpoints, witness serialization, and the worked-example battery.
 */

#include "repdyn/classify.hpp"
#include "repdyn/dynamics.hpp"
#include "repdyn/exact.hpp"
#include "repdyn/modpoly.hpp"
#include "repdyn/quartic.hpp"
#include "repdyn/sieve.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace repdyn {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline json coeffs_json(const UPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.str());
  return a;
}

/// {C, D, type, modulus, x, y, verified}; polynomial coefficients low to high.
inline json witness_json(const PeriodicWitness& w) {
  return json{{"C", w.C.str()},
              {"D", w.D.str()},
              {"type", w.type.tuple_str()},
              {"modulus", coeffs_json(w.modulus->display())},
              {"x", coeffs_json(w.vector.x.rep())},
              {"y", coeffs_json(w.vector.y.rep())},
              {"verified", verify(w)}};
}

inline json verdict_json(const LocalVerdict& v) {
  json w = json::array();
  for (const auto& z : v.witness) w.push_back(z.get_str());
  return json{{"prime", v.prime},
              {"max_level", v.max_level},
              {"levels_explored", v.levels_explored},
              {"outcome", v.outcome_str()},
              {"variables", v.variables},
              {"witness", w},
              {"witness_level", v.witness_level}};
}

// ---------------------------------------------------------------------------
// Sweep configuration and the cell grid
// ---------------------------------------------------------------------------

enum class SweepTarget { LrlrInteger, LrlrRational, LlrlrRational, Surface };

inline std::string target_name(SweepTarget t) {
  switch (t) {
    case SweepTarget::LrlrInteger: return "LRLR-integer";
    case SweepTarget::LrlrRational: return "LRLR-rational";
    case SweepTarget::LlrlrRational: return "LLRLR-rational";
    default: return "surface";
  }
}

inline SweepTarget parse_target(const std::string& s) {
  for (auto t : {SweepTarget::LrlrInteger, SweepTarget::LrlrRational, SweepTarget::LlrlrRational, SweepTarget::Surface})
    if (target_name(t) == s) return t;
  throw std::invalid_argument("unknown sweep target '" + s +
                              "' (expected LRLR-integer, LRLR-rational, LLRLR-rational or surface)");
}

inline int default_workers() {
  if (const char* env = std::getenv("REPDYN_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

struct SweepConfig {
  SweepTarget target = SweepTarget::LrlrRational;
  long height_bound = 1;
  int workers = 1;
  std::string checkpoint_path;  ///< empty: no checkpointing
  std::string output_path;      ///< empty: records are only counted
  bool resume = false;
  bool all_cells = false;              ///< also emit NoRationalRoot records
  std::uint64_t checkpoint_every = 200000;
  std::uint64_t max_cells = 0;         ///< stop after this many cells in this run (0: no limit)
  std::uint64_t chunk = 2048;
};

/// Ordered pairs of grid values, level by level in max height, then row-major.
class CellGrid {
 public:
  CellGrid(long H, bool integers_only) : values_(height_grid(H, integers_only)) {
    std::size_t i = 0;
    for (long h = 1; h <= H; ++h) {
      while (i < values_.size() && height(values_[i]).value <= h) ++i;
      level_end_.push_back(i);
    }
  }

  const std::vector<Rational>& values() const { return values_; }
  std::uint64_t size() const {
    const auto n = static_cast<std::uint64_t>(values_.size());
    return n * n;
  }

  std::pair<std::size_t, std::size_t> cell(std::uint64_t index) const {
    std::uint64_t prev = 0;
    for (std::size_t n : level_end_) {
      const std::uint64_t nh = n;
      if (index < nh * nh) {
        const std::uint64_t o = index - prev * prev, w = nh - prev, head = prev * w;
        if (o < head) return {static_cast<std::size_t>(o / w), static_cast<std::size_t>(prev + o % w)};
        const std::uint64_t r = o - head;
        return {static_cast<std::size_t>(prev + r / nh), static_cast<std::size_t>(r % nh)};
      }
      prev = nh;
    }
    throw std::out_of_range("CellGrid: index beyond grid");
  }

 private:
  std::vector<Rational> values_;
  std::vector<std::size_t> level_end_;
};

struct SweepSummary {
  std::string target;
  long bound = 0;
  std::uint64_t cells_total = 0;
  std::uint64_t cells_done = 0;
  std::uint64_t skipped = 0;  ///< cells with C = D
  std::uint64_t rational_roots = 0;
  std::uint64_t exceptional_roots = 0;  ///< rational roots on the degree-drop line C = -D
  std::uint64_t surface_points = 0;
  std::uint64_t exact_fallbacks = 0;
  std::map<std::string, std::uint64_t> shapes;
  std::uint64_t records_written = 0;
  std::string digest;
  std::uint64_t resumed_from = 0;
  bool complete = false;
  double seconds = 0;

  json to_json() const {
    return json{{"target", target},         {"bound", bound},
                {"cells_total", cells_total}, {"cells_done", cells_done},
                {"skipped", skipped},         {"rational_roots", rational_roots},
                {"exceptional_roots", exceptional_roots},
                {"surface_points", surface_points}, {"exact_fallbacks", exact_fallbacks},
                {"shapes", shapes},           {"records_written", records_written},
                {"digest", digest},           {"resumed_from", resumed_from},
                {"complete", complete},       {"seconds", seconds}};
  }
};

namespace detail {

/// FNV-1a over the emitted record lines.
class Digest {
 public:
  void add(const std::string& line) {
    for (unsigned char ch : line) h_ = (h_ ^ ch) * 1099511628211ull;
    h_ = (h_ ^ static_cast<unsigned char>('\n')) * 1099511628211ull;
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 1469598103934665603ull;
};

struct CellOutcome {
  std::vector<std::string> records;
  std::map<std::string, std::uint64_t> shapes;
  std::uint64_t skipped = 0, rational_roots = 0, exceptional_roots = 0, surface_points = 0, exact_fallbacks = 0,
                cells = 0;

  void merge(const CellOutcome& o) {
    records.insert(records.end(), o.records.begin(), o.records.end());
    for (const auto& [k, v] : o.shapes) shapes[k] += v;
    skipped += o.skipped;
    rational_roots += o.rational_roots;
    exceptional_roots += o.exceptional_roots;
    surface_points += o.surface_points;
    exact_fallbacks += o.exact_fallbacks;
    cells += o.cells;
  }
};

/// Immutable per-target data shared by all workers.
struct SweepContext {
  SweepTarget target;
  bool all_cells;
  CellGrid grid;
  std::optional<ModFamily> family;

  SweepContext(SweepTarget t, long H, bool all)
      : target(t), all_cells(all), grid(H, t == SweepTarget::LrlrInteger) {
    if (t == SweepTarget::LrlrInteger || t == SweepTarget::LrlrRational) family.emplace(r_poly_generic());
    if (t == SweepTarget::LlrlrRational) family.emplace(s_poly_generic());
    if (t == SweepTarget::LrlrInteger || t == SweepTarget::LrlrRational || t == SweepTarget::Surface)
      (void)depressed_sieve();
  }
};

inline json cell_base(std::uint64_t index, const Rational& C, const Rational& D) {
  return json{{"index", index}, {"C", C.str()}, {"D", D.str()}};
}

inline void rational_root_records(const TypeWord& t, const Rational& C, const Rational& D,
                                  const std::vector<Rational>& roots, std::uint64_t index, CellOutcome& out,
                                  bool exceptional = false) {
  for (const auto& r : roots) {
    const auto ws = witnesses_from_factor(t, C, D, UPoly{-r, Rational(1)});
    for (const auto& w : ws) {
      if (!verify(w)) throw std::logic_error("sweep: witness failed re-verification at (" + C.str() + ", " + D.str() + ")");
      json rec = cell_base(index, C, D);
      rec["finding"] = exceptional ? "ExceptionalRationalRoot" : "RationalRoot";
      rec["value"] = r.str();
      rec["witness"] = witness_json(w);
      out.records.push_back(rec.dump());
    }
    ++(exceptional ? out.exceptional_roots : out.rational_roots);
  }
}

inline void run_lrlr_cell(const SweepContext& ctx, std::uint64_t index, const Rational& C, const Rational& D,
                          CellOutcome& out) {
  const PrimitivePair pp = primitive_pair(C, D);
  const bool may_root = ctx.family->may_have_rational_root(pp.a, pp.b);
  const bool may_split = depressed_sieve().may_have_root(pp.a, pp.b, true);
  std::string shape = "(4)";
  if (may_root || may_split) {
    ++out.exact_fallbacks;
    const UPoly R = r_poly(C, D);
    const QuarticSplit split = quartic_factor_shape(R);
    shape = split.shape.str();
    if (may_root) rational_root_records(TypeWord::parse("LRLR"), C, D, rational_roots(R), index, out);
  }
  ++out.shapes[shape];
  if (shape != "(4)" || ctx.all_cells) {
    json rec = cell_base(index, C, D);
    rec["finding"] = shape == "(4)" ? "NoRationalRoot" : "FactorShape";
    rec["shape"] = shape;
    out.records.push_back(rec.dump());
  }
}

inline void run_llrlr_cell(const SweepContext& ctx, std::uint64_t index, const Rational& C, const Rational& D,
                           CellOutcome& out) {
  const PrimitivePair pp = primitive_pair(C, D);
  std::vector<Rational> roots;
  if (ctx.family->may_have_rational_root(pp.a, pp.b)) {
    ++out.exact_fallbacks;
    const UPoly S = s_poly(C, D);
    if (!S.is_zero()) roots = rational_roots(S);
    // S drops degree on C = -D, where (1/C, 1/C) is always periodic of type LLRLR.
    rational_root_records(TypeWord::parse("LLRLR"), C, D, roots, index, out, (C + D).is_zero());
  }
  if (roots.empty() && ctx.all_cells) {
    json rec = cell_base(index, C, D);
    rec["finding"] = "NoRationalRoot";
    out.records.push_back(rec.dump());
  }
}

inline void run_surface_cell(const SweepContext& ctx, std::uint64_t index, const Rational& C, const Rational& D,
                             CellOutcome& out) {
  std::vector<std::pair<Rational, Rational>> pts;
  if (auto q = surface_candidate(C, D)) {
    ++out.exact_fallbacks;
    pts = surface_points(*q);
  }
  for (const auto& [z, n] : pts) {
    json rec = cell_base(index, C, D);
    rec["finding"] = "SurfacePoint";
    rec["z"] = z.str();
    rec["n"] = n.str();
    out.records.push_back(rec.dump());
    ++out.surface_points;
  }
  if (pts.empty() && ctx.all_cells) {
    json rec = cell_base(index, C, D);
    rec["finding"] = "NoSurfacePoint";
    out.records.push_back(rec.dump());
  }
}

inline void run_cell(const SweepContext& ctx, std::uint64_t index, CellOutcome& out) {
  const auto [i, j] = ctx.grid.cell(index);
  const Rational& C = ctx.grid.values()[i];
  const Rational& D = ctx.grid.values()[j];
  ++out.cells;
  if (C == D) {
    ++out.skipped;
    return;
  }
  switch (ctx.target) {
    case SweepTarget::LrlrInteger:
    case SweepTarget::LrlrRational: run_lrlr_cell(ctx, index, C, D, out); break;
    case SweepTarget::LlrlrRational: run_llrlr_cell(ctx, index, C, D, out); break;
    case SweepTarget::Surface: run_surface_cell(ctx, index, C, D, out); break;
  }
}

inline void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write checkpoint '" + tmp + "'");
    os << text << '\n';
    if (!os.flush()) throw std::runtime_error("cannot write checkpoint '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

/**
 * Runs a sweep. Workers claim chunks of consecutive cell indices from an
 * atomic counter; the calling thread writes finished chunks strictly in index
 * order, so the record stream does not depend on the worker count.
 */
inline SweepSummary sweep(const SweepConfig& cfg) {
  if (cfg.height_bound < 1) throw std::invalid_argument("sweep: height bound must be at least 1");
  if (cfg.workers < 1) throw std::invalid_argument("sweep: workers must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  const detail::SweepContext ctx(cfg.target, cfg.height_bound, cfg.all_cells);

  SweepSummary sum;
  sum.target = target_name(cfg.target);
  sum.bound = cfg.height_bound;
  sum.cells_total = ctx.grid.size();
  detail::Digest digest;
  std::uint64_t start = 0;

  // Resume: validate the checkpoint and the records already on disk.
  std::vector<std::string> kept;
  if (cfg.resume) {
    if (cfg.checkpoint_path.empty()) throw std::invalid_argument("sweep: --resume needs a checkpoint path");
    std::ifstream is(cfg.checkpoint_path);
    if (!is) throw std::runtime_error("sweep: no checkpoint at '" + cfg.checkpoint_path + "'");
    json cp;
    try {
      is >> cp;
      if (cp.at("schema").get<int>() != 1 || cp.at("target").get<std::string>() != sum.target ||
          cp.at("bound").get<long>() != cfg.height_bound)
        throw std::runtime_error("checkpoint belongs to a different sweep");
      start = cp.at("last_index").get<std::uint64_t>();
      sum.records_written = cp.at("records_written").get<std::uint64_t>();
      sum.skipped = cp.at("skipped").get<std::uint64_t>();
      sum.rational_roots = cp.at("rational_roots").get<std::uint64_t>();
      sum.exceptional_roots = cp.at("exceptional_roots").get<std::uint64_t>();
      sum.surface_points = cp.at("surface_points").get<std::uint64_t>();
      sum.exact_fallbacks = cp.at("exact_fallbacks").get<std::uint64_t>();
      sum.shapes = cp.at("shapes").get<std::map<std::string, std::uint64_t>>();
      if (!cfg.output_path.empty()) {
        std::ifstream rs(cfg.output_path);
        std::string line;
        while (kept.size() < sum.records_written && std::getline(rs, line)) {
          digest.add(line);
          kept.push_back(line);
        }
        if (kept.size() != sum.records_written || digest.hex() != cp.at("digest").get<std::string>())
          throw std::runtime_error("output file does not match the checkpoint digest");
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep: corrupted checkpoint '" + cfg.checkpoint_path + "': " + e.what() +
                               " (delete it and rerun without --resume to start over)");
    }
    sum.resumed_from = start;
  }

  // Open outputs before doing any work.
  std::ofstream out;
  if (!cfg.output_path.empty()) {
    out.open(cfg.output_path, std::ios::trunc);
    if (!out) throw std::runtime_error("sweep: cannot write output '" + cfg.output_path + "'");
    for (const auto& line : kept) out << line << '\n';
  }
  auto checkpoint = [&](std::uint64_t next) {
    if (cfg.checkpoint_path.empty()) return;
    if (out.is_open()) out.flush();
    json cp{{"schema", 1},
            {"target", sum.target},
            {"bound", cfg.height_bound},
            {"last_index", next},
            {"records_written", sum.records_written},
            {"digest", digest.hex()},
            {"skipped", sum.skipped},
            {"rational_roots", sum.rational_roots},
            {"exceptional_roots", sum.exceptional_roots},
            {"surface_points", sum.surface_points},
            {"exact_fallbacks", sum.exact_fallbacks},
            {"shapes", sum.shapes}};
    detail::write_atomically(cfg.checkpoint_path, cp.dump());
  };
  checkpoint(start);

  std::uint64_t end = sum.cells_total;
  if (cfg.max_cells && start + cfg.max_cells < end) end = start + cfg.max_cells;
  const std::uint64_t chunk = cfg.chunk ? cfg.chunk : 1;
  const std::uint64_t nchunks = (end > start) ? (end - start + chunk - 1) / chunk : 0;
  const std::uint64_t window = static_cast<std::uint64_t>(cfg.workers) * 8 + 8;

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::uint64_t, detail::CellOutcome> done;
  std::atomic<std::uint64_t> next_chunk{0};
  std::uint64_t written_chunks = 0;
  std::exception_ptr error;
  bool stop = false;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t id = next_chunk.fetch_add(1);
      if (id >= nchunks) return;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return stop || id < written_chunks + window; });
        if (stop) return;
      }
      detail::CellOutcome res;
      try {
        const std::uint64_t lo = start + id * chunk, hi = std::min(end, lo + chunk);
        for (std::uint64_t k = lo; k < hi; ++k) detail::run_cell(ctx, k, res);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
        cv.notify_all();
        return;
      }
      std::lock_guard lock(mu);
      done.emplace(id, std::move(res));
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);

  std::uint64_t since_checkpoint = 0;
  while (written_chunks < nchunks) {
    detail::CellOutcome res;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return stop || done.count(written_chunks) > 0; });
      if (stop) break;
      res = std::move(done.at(written_chunks));
      done.erase(written_chunks);
    }
    for (const auto& line : res.records) {
      if (out.is_open()) out << line << '\n';
      digest.add(line);
    }
    sum.records_written += res.records.size();
    for (const auto& [k, v] : res.shapes) sum.shapes[k] += v;
    sum.skipped += res.skipped;
    sum.rational_roots += res.rational_roots;
    sum.exceptional_roots += res.exceptional_roots;
    sum.surface_points += res.surface_points;
    sum.exact_fallbacks += res.exact_fallbacks;
    since_checkpoint += res.cells;
    {
      std::lock_guard lock(mu);
      ++written_chunks;
      cv.notify_all();
    }
    if (since_checkpoint >= cfg.checkpoint_every) {
      checkpoint(std::min(end, start + written_chunks * chunk));
      since_checkpoint = 0;
    }
  }
  {
    std::lock_guard lock(mu);
    stop = true;
    cv.notify_all();
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  const std::uint64_t reached = std::min(end, start + written_chunks * chunk);
  checkpoint(reached);
  sum.cells_done = reached;
  sum.complete = reached == sum.cells_total;
  sum.digest = digest.hex();
  sum.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sum;
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

struct ExampleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// (w, w) with 2w^2 + w + 1 = 0 for x^2 + y^2.
inline Vec2<NFElem> w2_vector() {
  const ModulusPtr m = NFModulus::make(UPoly{Rational(1), Rational(1), Rational(2)});
  const NFElem w = NFElem::generator(m);
  return {w, w};
}

inline const std::vector<std::pair<int, int>>& table1_expected() {
  static const std::vector<std::pair<int, int>> rows{{2, 0},  {2, 0},  {2, 4},  {6, 0},  {2, 8},  {12, 0}, {6, 16},
                                                     {2, 8},  {8, 16}, {30, 0}, {12, 32}, {6, 16}, {16, 32}};
  return rows;
}

inline std::vector<ExampleCheck> verify_examples() {
  std::vector<ExampleCheck> out;
  auto check = [&out](const std::string& name, auto&& fn) {
    ExampleCheck c{name, false, ""};
    try {
      c.pass = fn(c.detail);
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(c));
  };
  const TypeWord LRLR = TypeWord::parse("LRLR"), LLRLR = TypeWord::parse("LLRLR");

  check("table1-degrees", [](std::string& d) {
    const auto rows = degree_table(5);
    std::vector<std::pair<int, int>> got;
    for (const auto& r : rows) got.emplace_back(r.degL, r.degR);
    for (const auto& [a, b] : got) d += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return got == table1_expected();
  });
  check("phi-LL-L", [](std::string& d) {
    const MPoly p = phi(TypeWord::parse("LL"), Side::L);
    d = p.str();
    return p == MPoly::parse("c^2*x^2 + c*x + c*d*y^2 + 1");
  });
  check("R(1,6)-factorization", [](std::string& d) {
    const UPoly R = r_poly(1, 6);
    d = R.str('y');
    return R == Rational(5) * UPoly::from_high({128, 32, 5}) * UPoly::from_high({135, 45, 7});
  });
  check("lrlr-(1,6)-witnesses", [&](std::string& d) {
    const auto ws = lrlr_vectors(1, 6);
    bool ok = ws.size() == 2;
    for (const auto& w : ws) {
      d += w.modulus->display().str('y') + "; ";
      ok = ok && w.modulus->degree() == 2 && verify(w) && w.type == LRLR;
    }
    return ok;
  });
  check("lrlr-(1/4,-1/4)-witness", [&](std::string& d) {
    const auto ws = lrlr_vectors(Rational(1, 4), Rational(-1, 4));
    if (ws.size() != 1) return false;
    const auto& w = ws[0];
    d = w.modulus->display().str('y') + "; x = " + w.vector.x.str();
    const NFElem y = w.vector.y;
    const NFElem rhs = Rational(-3) * y * y * y + Rational(4) * y * y - Rational(8) * y - NFElem(w.modulus, Rational(28));
    return w.modulus->display() == UPoly::from_high({1, 0, 4, 16, 28}) && verify(w) &&
           Rational(14) * w.vector.x == rhs;
  });
  check("S(1,1)-factorization", [](std::string& d) {
    const UPoly S = s_poly(1, 1);
    d = S.str('y');
    return S == UPoly::from_high({2, 1, 1}) * UPoly::from_high({1024, 512, 640, -96, -140, 0, 81, -47, 145});
  });
  check("W2-not-LLRLR", [&](std::string& d) {
    const Vec2<NFElem> v = w2_vector();
    const Form<NFElem> f = lift(Form<Rational>(1, 1), v.x.modulus());
    const bool ll = is_periodic_of_type(f, v, TypeWord::parse("LL"));
    const bool rr = is_periodic_of_type(f, v, TypeWord::parse("RR"));
    const bool five = is_periodic_of_type(f, v, LLRLR);
    d = std::string("LL:") + (ll ? "yes" : "no") + " RR:" + (rr ? "yes" : "no") + " LLRLR:" + (five ? "yes" : "no");
    return ll && rr && !five;
  });
  check("B2-local", [](std::string& d) {
    const B2Report r = b2_curve_check();
    d = r.factors[0].str() + " | " + r.factors[1].str() + "; " + r.verdicts[0].outcome_str() + ", " +
        r.verdicts[1].outcome_str();
    return r.ok();
  });
  check("degree12-local", [](std::string& d) {
    const LocalVerdict v = qp_solvable({equality_curve_printed()}, 3, 12);
    d = v.outcome_str() + " at level " + std::to_string(v.levels_explored);
    return v.outcome == LocalVerdict::Outcome::NoPoints;
  });
  return out;
}

}  // namespace repdyn
