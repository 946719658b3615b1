// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "frametrace/io.hpp"
#include "frametrace/plancherel.hpp"
#include "support.hpp"

using namespace frametrace;
namespace ft = frametrace::testing;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  double worst = 0.0;  // largest residual seen, for the summary line
  std::string notes;

  void residual(double r, double tol, const std::string& what) {
    worst = std::max(worst, r);
    if (!(r <= tol)) fail(what + " residual " + fmt(r) + " > " + fmt(tol));
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  void fail(const std::string& what) {
    if (pass) notes += " first failure: " + what;
    pass = false;
  }
  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }
};

int failures = 0;

void report(const Criterion& c, const std::string& extra = {}) {
  std::printf("[%s] %d %s: max residual %s%s%s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
              Criterion::fmt(c.worst).c_str(), extra.c_str(), c.notes.c_str());
  if (!c.pass) ++failures;
}

struct TestGroup {
  std::string name;
  GroupPtr group;
  std::optional<IrrepTable> table;  // absent for the Weyl-Heisenberg group
};

std::vector<TestGroup> test_groups(const WHGroup& wh) {
  std::vector<TestGroup> out;
  for (const char* spec : {"cyclic:12", "dihedral:4", "heisenberg:3"}) {
    const auto g = builtin_group(spec);
    out.push_back({spec, g, builtin_irreps(g)});
  }
  out.push_back({wh.group->label(), wh.group, std::nullopt});
  return out;
}

CommutantBasis regular_commutant(const GroupPtr& g) {
  const auto n = static_cast<Eigen::Index>(g->order());
  std::vector<CMatrix> elems;
  for (int y = 0; y < static_cast<int>(n); ++y)
    elems.push_back(convolution_operator(delta(g, y), Side::Right) / std::sqrt(static_cast<double>(n)));
  return {left_regular_rep(g), CMatrix::Identity(n, n), std::move(elems)};
}

InvariantProjection random_projection(const TestGroup& tg, Rng& rng) {
  return tg.table ? random_isotypic_projection(*tg.table, rng)
                  : random_spectral_projection(tg.group, rng);
}

CVector perturb(const CVector& v, Rng& rng, double rel = 1e-6) {
  return v + rel * v.norm() * random_vector(rng, v.size()).normalized();
}

// 1 ------------------------------------------------------------------------
void trace_identity(const std::vector<TestGroup>& groups) {
  Criterion c{1, "trace identity tr(V_f* V_g) = <f,g>"};
  Rng rng(101);
  for (const auto& tg : groups) {
    const auto n = static_cast<Eigen::Index>(tg.group->order());
    const Rep lam = left_regular_rep(tg.group);
    for (int k = 0; k < 200; ++k) {
      const CVector f = random_vector(rng, n), g = random_vector(rng, n);
      const CMatrix vf = coefficient_operator(lam, f).matrix, vg = coefficient_operator(lam, g).matrix;
      const Complex t = natural_trace(CMatrix(vf.adjoint() * vg), *tg.group);
      c.residual(std::abs(t - inner<double>(f, g)), 1e-9, tg.name);
    }
  }
  report(c, " (tol 1e-9, 200 pairs x 4 groups)");
}

// 2 ------------------------------------------------------------------------
void coefficient_operators(const std::vector<TestGroup>& groups, const WHGroup& wh) {
  Criterion c{2, "intertwining, canonical dual, tight window"};
  Rng rng(102);

  std::vector<std::pair<std::string, Rep>> reps;
  for (const auto& tg : groups) reps.emplace_back("lambda " + tg.name, left_regular_rep(tg.group));
  reps.emplace_back("gabor " + wh.group->label(), wh.rep);
  {
    const auto& t = *groups[1].table;
    reps.emplace_back("dihedral:4 trivial+rho",
                      ft::direct_sum({t.irreps()[0].rep, t.irreps()[ft::first_irrep_of_dim(t, 2)].rep}));
  }
  {
    const auto& t = *groups[2].table;
    reps.emplace_back("heisenberg:3 schroedinger", t.irreps()[ft::first_irrep_of_dim(t, 3)].rep);
  }

  std::string wdims;
  for (const auto& [name, rep] : reps) {
    int w_dim = -1;
    for (int k = 0; k < 20; ++k) {
      const CVector eta = random_vector(rng, rep.dim());
      const auto v = coefficient_operator(rep, eta);
      c.residual(intertwining_residual(v), 1e-10, name + " intertwining");

      const CVector psi = canonical_dual(v);
      c.residual(is_admissible_pair(rep, eta, psi).residual, 1e-9, name + " dual");
      const CMatrix w = ft::null_set_basis(rep, eta);
      w_dim = static_cast<int>(w.cols());
      if (w.cols() > 0)
        for (int j = 0; j < 20; ++j) {
          const CVector wj = w * random_vector(rng, w.cols());
          const double r = std::abs(inner<double>(psi, wj)) / (psi.norm() * wj.norm());
          c.residual(r, 1e-9, name + " orthogonality to W");
        }

      const CVector t = tighten(v);
      c.residual(is_admissible_pair(rep, t, t).residual, 1e-9, name + " tight self-dual");
    }
    wdims += " " + name + "=" + std::to_string(w_dim);
  }
  report(c, " (tol 1e-10/1e-9; dim W:" + wdims + ")");
}

// 3 ------------------------------------------------------------------------
void admissible_vectors(const std::vector<TestGroup>& groups) {
  Criterion c{3, "admissible vector for invariant projections"};
  Rng rng(103);
  for (const auto& tg : groups) {
    const Rep lam = left_regular_rep(tg.group);
    for (int k = 0; k < 20; ++k) {
      const auto p = random_projection(tg, rng);
      const CVector v = admissible_vector_for_projection(p);
      const CMatrix vv = coefficient_operator(lam, v).matrix;
      c.residual((vv.adjoint() * vv - p.matrix()).norm(), 1e-9, tg.name + " V*V = p");
      c.residual(std::abs(trace_of_projection(p) - v.squaredNorm()), 1e-9, tg.name + " tr p");
    }
  }
  report(c, " (tol 1e-9, 20 projections x 4 groups)");
}

// 4 ------------------------------------------------------------------------
void admissible_iff_tracial(const std::vector<TestGroup>& groups) {
  Criterion c{4, "admissible <=> tracial on subrepresentations"};
  Rng rng(104);
  int pairs = 0;
  for (const auto& tg : groups) {
    const auto base = regular_commutant(tg.group);
    const auto tr = TraceFunctional::for_group(*tg.group);
    const auto n = static_cast<Eigen::Index>(tg.group->order());
    std::vector<CMatrix> ps{CMatrix::Identity(n, n)};
    for (int k = 0; k < 2; ++k) ps.push_back(random_projection(tg, rng).matrix());
    for (const auto& p : ps) {
      const auto red = reduced_commutant(base, p);
      const auto& pi = red.rep;
      for (int k = 0; k < 100; ++k, ++pairs) {
        const CVector eta = random_vector(rng, pi.dim());
        CVector psi = canonical_dual(coefficient_operator(pi, eta));
        const bool constructed = k % 2 == 0;
        if (!constructed) psi = perturb(psi, rng);
        const auto adm = is_admissible_pair(pi, eta, psi);
        const auto trc = is_tracial_pair(red, tr, eta, psi);
        if (constructed) {
          c.residual(adm.residual, 1e-9, tg.name + " admissible");
          c.residual(trc.residual, 1e-9, tg.name + " tracial");
        } else {
          c.expect(!adm.pass && !trc.pass, tg.name + " perturbed pair accepted");
        }
        c.expect(adm.pass == trc.pass, tg.name + " verdicts disagree");
      }
    }
  }
  report(c, " (tol 1e-9, " + std::to_string(pairs) + " pairs, perturbation 1e-6)");
}

// 5 ------------------------------------------------------------------------
void plancherel_suite(const std::vector<TestGroup>& groups) {
  Criterion c{5, "Plancherel: Parseval, round trip, sum d^2 = |G|"};
  Rng rng(105);
  for (const auto& tg : groups) {
    if (!tg.table) continue;
    const auto n = static_cast<Eigen::Index>(tg.group->order());
    for (int k = 0; k < 200; ++k) {
      const auto f = make_group_vector(tg.group, random_vector(rng, n));
      c.residual(parseval_residual(*tg.table, f), 1e-9, tg.name + " Parseval");
      const auto back = inverse_plancherel(plancherel_transform(*tg.table, f));
      c.residual((back.data - f.data).norm() / f.data.norm(), 1e-10, tg.name + " round trip");
    }
  }
  int tables = 0;
  for (const char* spec : {"cyclic:1", "cyclic:2", "cyclic:7", "cyclic:12", "dihedral:3", "dihedral:4",
                           "dihedral:5", "dihedral:6", "heisenberg:2", "heisenberg:3", "heisenberg:5",
                           "cyclic:2xdihedral:3", "cyclic:3xcyclic:4", "dihedral:4xheisenberg:2"}) {
    const auto g = builtin_group(spec);
    const auto t = builtin_irreps(g);
    Eigen::Index sum = 0;
    for (const auto& ir : t.irreps()) sum += ir.dim * ir.dim;
    c.expect(sum == static_cast<Eigen::Index>(g->order()), std::string(spec) + " sum d^2");
    ++tables;
  }
  report(c, " (tol 1e-9/1e-10, 200 vectors x 3 builtin groups, " + std::to_string(tables) +
                " tables)");
}

// 6 ------------------------------------------------------------------------
void fiber_suite(const std::vector<TestGroup>& groups) {
  Criterion c{6, "fiber criterion and rank measure"};
  Rng rng(106);
  for (const auto& tg : groups) {
    if (!tg.table) continue;
    const Rep lam = left_regular_rep(tg.group);
    for (int k = 0; k < 20; ++k) {
      const auto p = random_isotypic_projection(*tg.table, rng);
      const double nu = rank_measure(fiber_projections(*tg.table, p));
      c.residual(std::abs(nu - natural_trace(p.matrix(), *tg.group).real()), 1e-9, tg.name + " nu");

      const CMatrix basis = p.range_basis();
      const Rep sub = restrict_rep(lam, basis);
      const CVector eta = random_vector(rng, sub.dim());
      const CVector psi = canonical_dual(coefficient_operator(sub, eta));
      const CVector bent = perturb(psi, rng);
      const auto good = fiber_admissibility_check(*tg.table, p, basis * eta, basis * psi);
      const auto bad = fiber_admissibility_check(*tg.table, p, basis * eta, basis * bent);
      c.residual(good.residual, 1e-9, tg.name + " fiber");
      c.expect(good.pass == is_admissible_pair(sub, eta, psi).pass, tg.name + " constructed disagree");
      c.expect(!bad.pass && !is_admissible_pair(sub, eta, bent).pass, tg.name + " perturbed accepted");
    }
  }
  report(c, " (tol 1e-9, 20 projections x 3 builtin groups)");
}

// 7 ------------------------------------------------------------------------
void gabor_suite() {
  Criterion c{7, "Gabor: reference, Wexler-Raz, adjoint lattice, fundamental relation"};
  Rng rng(107);
  std::string constants;
  for (auto [L, a, b] : {std::array{12, 3, 2}, std::array{4, 2, 2}}) {
    const std::string tag = std::to_string(L) + "," + std::to_string(a) + "," + std::to_string(b);
    const auto lat = make_lattice(L, a, b);
    const CMatrix id = CMatrix::Identity(L, L);

    const CVector ref = reference_window(L, a, b);
    c.residual((gabor_frame_operator(make_gabor_system(lat, ref)) - id).norm(), 1e-10, tag + " tight");

    const auto sys = make_gabor_system(lat, random_vector(rng, L));
    const CVector gamma = gabor_canonical_dual(sys);
    c.residual(wexler_raz_check(sys, gamma).residual, 1e-9, tag + " Wexler-Raz");
    const double constant = inner<double>(gamma, sys.window).real();
    c.residual(std::abs(constant - lat.density()), 1e-9, tag + " constant");
    constants += " " + tag + "->" + Criterion::fmt(constant);

    // Candidate duals: canonical dual plus elements of the Wexler-Raz null set.
    const auto adj = adjoint_lattice_ops(L, a, b);
    CMatrix span(L, static_cast<Eigen::Index>(adj.size()));
    for (std::size_t k = 0; k < adj.size(); ++k) span.col(static_cast<Eigen::Index>(k)) = adj[k] * sys.window;
    const CMatrix q = orthonormal_range<double>(CMatrix(span * span.adjoint()));
    const CMatrix w = null_space_psd<double>(CMatrix(q * q.adjoint()));
    for (int k = 0; k < 50; ++k) {
      CVector cand = gamma;
      if (w.cols() > 0) cand += w * random_vector(rng, w.cols());
      const bool constructed = k % 2 == 0;
      if (!constructed) cand = perturb(cand, rng);
      const auto wr = wexler_raz_check(sys, cand);
      const auto rec = gabor_reconstruction_check(sys, cand);
      c.expect(wr.pass == rec.pass, tag + " Wexler-Raz and reconstruction disagree");
      c.expect(wr.pass == constructed, tag + " unexpected verdict");
    }

    const auto wh = wh_group_build(L, a, b);
    const auto comm = commutant_basis(wh.rep);
    c.expect(comm.dimension() == adj.size(), tag + " commutant dimension");
    c.residual(span_residual(adj, comm.elements), 1e-9, tag + " adjoint span");
    c.residual(span_residual(comm.elements, adj), 1e-9, tag + " commutant span");

    for (int k = 0; k < 50; ++k) {
      const CVector f = random_vector(rng, L), g = random_vector(rng, L), h = random_vector(rng, L);
      c.residual(wr_fundamental_relation_check(L, a, b, f, g, h).residual, 1e-9, tag + " relation");
    }
  }
  report(c, " (tol 1e-10/1e-9; <gamma,g>:" + constants + ")");
}

// 8 ------------------------------------------------------------------------
void bridge_suite(const WHGroup& wh) {
  Criterion c{8, "Weyl-Heisenberg group bridge"};
  c.expect(wh.group->order() == 48, "order");
  c.residual(wh.rep.homomorphism_residual(), 1e-10, "homomorphism");
  c.residual(wh.rep.unitarity_residual(), 1e-10, "unitarity");
  try {
    group_from_cayley(wh.group->cayley(), wh.group->label());
  } catch (const NotAGroup& e) {
    c.fail(std::string("group axioms: ") + e.what());
  }
  Rng rng(108);
  for (int k = 0; k < 20; ++k) {
    const CVector f = random_vector(rng, 12), g = random_vector(rng, 12);
    c.residual(wh_bridge_check(wh, f, g).residual, 1e-9, "bridge");
  }
  report(c, " (tol 1e-9, 20 pairs, q=" + std::to_string(wh.q) + ")");
}

// 9 ------------------------------------------------------------------------
int run(const std::string& args, const fs::path& out = {}) {
  std::string cmd = std::string(FRAMETRACE_BIN) + " " + args;
  cmd += out.empty() ? " >/dev/null" : " >" + out.string();
  cmd += " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_contract() {
  Criterion c{9, "CLI exit codes and determinism"};
  const fs::path dir = fs::path(FRAMETRACE_SCRATCH) / "acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto file = [&](const std::string& name, const std::string& text) {
    io::write_file((dir / name).string(), text);
    return (dir / name).string();
  };
  const auto bad_group = file("bad.json", R"({"label":"x","order":2,"cayley":[[0,1],[1,1]]})");
  const auto eta = file("eta.json", R"({"group":"cyclic:2","data":[[1,0],[0,0]]})");
  const auto flat = file("flat.json", R"({"group":"cyclic:2","data":[[1,0],[1,0]]})");
  const auto other = file("other.json", R"({"group":"cyclic:3","data":[[1,0],[0,0],[0,0]]})");
  const auto broken = file("broken.json", "{not json");

  const std::vector<std::pair<std::string, int>> matrix{
      {"group --builtin dihedral:4 analyze", 0},
      {"group --builtin cyclic:6 analyze", 0},
      {"frame decompose --builtin cyclic:2", 0},
      {"frame check --pair " + eta + " " + eta, 0},
      {"gabor reference --L 12 --a 3 --b 2", 0},
      {"gabor wexler-raz --L 12 --a 3 --b 2", 0},
      {"gabor bridge --L 12 --a 3 --b 2", 0},
      {"gabor dual --L 4 --a 2 --b 4", 1},
      {"frame dual --window " + flat, 1},
      {"frame check --pair " + eta + " " + flat, 1},
      {"group --file " + bad_group + " analyze", 2},
      {"group --builtin nope:3 analyze", 2},
      {"group --file " + broken + " analyze", 2},
      {"frame dual --builtin cyclic:2 --window " + other, 2},
      {"gabor reference --L 12 --a 5 --b 2", 2},
      {"gabor", 2},
      {"--tol nan group --builtin cyclic:3 analyze", 2},
  };
  int cases = 0;
  for (const auto& [args, want] : matrix) {
    const int got = run(args);
    c.expect(got == want, "'" + args + "' exited " + std::to_string(got) + ", want " +
                              std::to_string(want));
    ++cases;
  }
  const auto bad_env = std::string("FRAMETRACE_TOL=abc ") + FRAMETRACE_BIN +
                       " group --builtin cyclic:3 analyze >/dev/null 2>&1";
  const int st = std::system(bad_env.c_str());
  c.expect(WIFEXITED(st) && WEXITSTATUS(st) == 2, "invalid FRAMETRACE_TOL accepted");
  ++cases;

  for (const std::string& args : std::vector<std::string>{"gabor dual --L 12 --a 3 --b 2 --seed 7",
                                 "group --builtin heisenberg:3 analyze --seed 3",
                                 "frame tighten --window " + eta}) {
    run(args + " --out " + (dir / "r1.json").string());
    run(args + " --out " + (dir / "r2.json").string());
    run(args, dir / "r3.json");
    const auto r1 = io::read_file((dir / "r1.json").string());
    c.expect(!r1.empty() && r1 == io::read_file((dir / "r2.json").string()) &&
                 r1 == io::read_file((dir / "r3.json").string()),
             "'" + args + "' is not byte-stable");
  }
  report(c, " (" + std::to_string(cases) + " exit-code cases, 3 determinism runs)");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto wh = wh_group_build(12, 3, 2);
    const auto groups = test_groups(wh);
    trace_identity(groups);
    coefficient_operators(groups, wh);
    admissible_vectors(groups);
    admissible_iff_tracial(groups);
    plancherel_suite(groups);
    fiber_suite(groups);
    gabor_suite();
    bridge_suite(wh);
    cli_contract();
  } catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s: %d failing criteria, %.1f s\n", failures ? "FAILED" : "OK", failures, secs);
  return failures ? 1 : 0;
}
