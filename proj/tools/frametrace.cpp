// frametrace: batch verification front end. Exit 0 = all checks pass,
// 1 = some check failed, 2 = malformed input.
#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "frametrace/commutant.hpp"
#include "frametrace/gabor.hpp"
#include "frametrace/io.hpp"
#include "frametrace/plancherel.hpp"
#include "frametrace/sampling.hpp"

using namespace frametrace;
using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

struct Common {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  int samples = 20;
  std::string out;
  std::string vector_out;
};

const char* error_name(const std::exception& e) {
  // Most specific first.
  if (dynamic_cast<const NotAFrame*>(&e)) return "NotAFrame";
  if (dynamic_cast<const NotInvertible*>(&e)) return "NotInvertible";
  if (dynamic_cast<const IrrepError*>(&e)) return "IrrepError";
  if (dynamic_cast<const DimensionMismatch*>(&e)) return "DimensionMismatch";
  if (dynamic_cast<const NotFinite*>(&e)) return "NotFinite";
  if (dynamic_cast<const NotHermitian*>(&e)) return "NotHermitian";
  if (dynamic_cast<const NotAGroup*>(&e)) return "NotAGroup";
  if (dynamic_cast<const UnknownGroupSpec*>(&e)) return "UnknownGroupSpec";
  if (dynamic_cast<const GroupMismatch*>(&e)) return "GroupMismatch";
  if (dynamic_cast<const NotARepresentation*>(&e)) return "NotARepresentation";
  if (dynamic_cast<const NotInvariant*>(&e)) return "NotInvariant";
  if (dynamic_cast<const InvariantViolated*>(&e)) return "InvariantViolated";
  if (dynamic_cast<const NotInRange*>(&e)) return "NotInRange";
  if (dynamic_cast<const ReferencePairNotAdmissible*>(&e)) return "ReferencePairNotAdmissible";
  if (dynamic_cast<const UnsupportedGroup*>(&e)) return "UnsupportedGroup";
  if (dynamic_cast<const InvalidParameter*>(&e)) return "InvalidParameter";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  return "Error";
}

json load_json(const std::string& path, RunReport& report) {
  const std::string bytes = io::read_file(path);
  report.inputs.push_back({path, sha256_hex(bytes)});
  return io::parse_json(bytes, path);
}

struct GroupSource {
  std::string builtin;
  std::string file;
};

GroupPtr load_group(const GroupSource& src, RunReport& report,
                    const std::string& fallback_label = {}) {
  if (!src.builtin.empty() && !src.file.empty())
    throw InvalidParameter("give either --builtin or a group file, not both");
  if (!src.file.empty()) return io::group_from_json(load_json(src.file, report));
  if (!src.builtin.empty()) return builtin_group(src.builtin);
  if (!fallback_label.empty()) return builtin_group(fallback_label);
  throw InvalidParameter("no group given");
}

std::optional<IrrepTable> load_irreps(const GroupPtr& g, const std::string& path,
                                      RunReport& report) {
  if (!path.empty()) return io::irreps_from_json(load_json(path, report), g);
  try {
    return builtin_irreps(g);
  } catch (const UnsupportedGroup&) {
    return std::nullopt;
  } catch (const UnknownGroupSpec&) {
    return std::nullopt;
  }
}

GroupVector load_group_vector(const GroupPtr& g, const std::string& path, RunReport& report) {
  auto v = io::vector_from_json(load_json(path, report));
  if (v.group != g->label())
    throw GroupMismatch(path + ": vector is labeled '" + v.group + "', group is '" + g->label() + "'");
  return make_group_vector(g, std::move(v.data));
}

std::string peek_group_label(const std::string& path) {
  if (path.empty()) return {};
  return io::vector_from_json(io::parse_json(io::read_file(path), path)).group;
}

CMatrix right_translation_basis_element(const GroupPtr& g, int y) {
  return convolution_operator(delta(g, y), Side::Right) /
         std::sqrt(static_cast<double>(g->order()));
}

// Commutant of lambda_G from normalized right translations; these are
// already orthonormal in the Frobenius inner product.
CommutantBasis regular_commutant(const GroupPtr& g) {
  const auto n = static_cast<Eigen::Index>(g->order());
  std::vector<CMatrix> elems;
  for (int y = 0; y < static_cast<int>(n); ++y) elems.push_back(right_translation_basis_element(g, y));
  return {left_regular_rep(g), CMatrix::Identity(n, n), std::move(elems)};
}

Complex sample_trace_pair(const Rep& lam, const FiniteGroup& g, const CVector& f, const CVector& h,
                          Complex* expected) {
  const CMatrix vf = coefficient_operator(lam, f).matrix;
  const CMatrix vh = coefficient_operator(lam, h).matrix;
  *expected = inner<double>(f, h);
  return natural_trace(CMatrix(vf.adjoint() * vh), g);
}

int finish(const RunReport& report, const Common& c) {
  if (c.out.empty())
    std::cout << serialize(report);
  else
    report_write(report, c.out);
  return report.pass() ? 0 : 1;
}

ojson complex_json(const CVector& v) { return ojson::parse(io::complex_list_json(v).dump()); }

// ---- group --------------------------------------------------------------

int cmd_group_analyze(const GroupSource& src, const std::string& irreps_path, const Common& c) {
  RunReport report{"group analyze", {}, {}, {}};
  const GroupPtr g = load_group(src, report);
  const auto table = load_irreps(g, irreps_path, report);
  const auto n = static_cast<Eigen::Index>(g->order());
  const double order = static_cast<double>(n);
  const Rep lam = left_regular_rep(g);

  report.results["label"] = g->label();
  report.results["order"] = g->order();
  report.results["abelian"] = g->is_abelian();
  report.add(make_check("group_axioms", std::max(lam.homomorphism_residual(), lam.unitarity_residual()),
                        c.tol));

  double comm_dim = 0.0;
  if (n <= 32) {
    comm_dim = static_cast<double>(commutant_basis(lam).dimension());
    report.results["commutant_method"] = "null_space";
  } else {
    comm_dim = commutant_dimension_by_characters(lam);
    report.results["commutant_method"] = "characters";
  }
  report.results["commutant_dimension"] = std::llround(comm_dim);
  report.add(make_check("commutant_dimension", std::abs(comm_dim - order), c.tol));

  Rng rng(c.seed);
  double worst = 0.0;
  for (int k = 0; k < c.samples; ++k) {
    const CVector f = random_vector(rng, n), h = random_vector(rng, n);
    Complex expect;
    const Complex got = sample_trace_pair(lam, *g, f, h, &expect);
    worst = std::max(worst, std::abs(got - expect));
  }
  report.add(make_check("trace_identity", worst, c.tol));

  if (table) {
    ojson list = ojson::array();
    double sum_d2 = 0.0;
    for (const auto& ir : table->irreps()) {
      list.push_back({{"label", ir.label}, {"dim", ir.dim}});
      sum_d2 += static_cast<double>(ir.dim * ir.dim);
    }
    report.results["irrep_count"] = table->size();
    report.results["irreps"] = std::move(list);
    report.add(make_check("plancherel_completeness", std::abs(sum_d2 - order), 0.0));
    double parseval = 0.0, round_trip = 0.0;
    for (int k = 0; k < c.samples; ++k) {
      const auto f = make_group_vector(g, random_vector(rng, n));
      parseval = std::max(parseval, parseval_residual(*table, f));
      const auto back = inverse_plancherel(plancherel_transform(*table, f));
      round_trip = std::max(round_trip, (back.data - f.data).norm() / f.data.norm());
    }
    report.add(make_check("parseval", parseval, c.tol));
    report.add(make_check("round_trip", round_trip, c.tol));
  } else {
    report.results["irreps"] = nullptr;
  }
  return finish(report, c);
}

// ---- frame --------------------------------------------------------------

struct FrameArgs {
  GroupSource src;
  std::string irreps;
  std::string subspace;
  std::string window;
  std::vector<std::string> pair;
};

// The representation acted on: lambda_G, or its restriction to range(p).
struct Setting {
  GroupPtr group;
  InvariantProjection p;
  CommutantBasis comm;  // rep = restriction, embedding = orthonormal basis of range(p)
};

Setting make_setting(const FrameArgs& a, RunReport& report, const std::string& label_hint) {
  const GroupPtr g = load_group(a.src, report, label_hint);
  const Rep lam = left_regular_rep(g);
  const auto n = static_cast<Eigen::Index>(g->order());
  InvariantProjection p = InvariantProjection::make(g, CMatrix::Identity(n, n));
  if (!a.subspace.empty()) {
    auto vs = io::vectors_from_json(load_json(a.subspace, report));
    if (vs.group != g->label())
      throw GroupMismatch(a.subspace + ": vectors are labeled '" + vs.group + "'");
    p = projection_from_spanning(lam, vs.vectors);
  }
  auto comm = reduced_commutant(regular_commutant(g), p.matrix());
  report.results["group"] = g->label();
  report.results["subspace_dimension"] = comm.rep.dim();
  return {g, std::move(p), std::move(comm)};
}

CVector to_coords(const Setting& s, const GroupVector& v, const std::string& what) {
  const CMatrix& b = s.comm.embedding;
  const CVector c = b.adjoint() * v.data;
  if ((b * c - v.data).norm() > 1e-9 * std::max(1.0, v.data.norm()))
    throw NotInRange(what + " is not in the subspace");
  return c;
}

void write_vector(const Common& c, const std::string& label, const CVector& v) {
  if (!c.vector_out.empty()) io::write_file(c.vector_out, io::vector_to_json(label, v).dump(2) + "\n");
}

int cmd_frame_dual(const FrameArgs& a, const Common& c, bool tight) {
  RunReport report{tight ? "frame tighten" : "frame dual", {}, {}, {}};
  if (a.window.empty()) throw InvalidParameter("--window is required");
  const auto s = make_setting(a, report, peek_group_label(a.window));
  const auto eta = load_group_vector(s.group, a.window, report);
  const CVector eta_c = to_coords(s, eta, "window");
  const auto v = coefficient_operator(s.comm.rep, eta_c);
  report.results["frame_condition_ratio"] = frame_condition_ratio(v);
  try {
    const CVector out_c = tight ? tighten(v) : canonical_dual(v);
    const CVector out = s.comm.embedding * out_c;
    if (tight) {
      report.add(is_admissible_pair(s.comm.rep, out_c, out_c, c.tol));
      report.results["tight_window"] = complex_json(out);
    } else {
      report.add(is_admissible_pair(s.comm.rep, eta_c, out_c, c.tol));
      report.results["dual"] = complex_json(out);
    }
    write_vector(c, s.group->label(), out);
  } catch (const NotInvertible&) {
    report.add(make_check("frame_vector", INFINITY, c.tol, "NotAFrame"));
  }
  return finish(report, c);
}

int cmd_frame_check(const FrameArgs& a, const Common& c) {
  RunReport report{"frame check", {}, {}, {}};
  if (a.pair.size() != 2) throw InvalidParameter("--pair takes two vector files");
  const auto s = make_setting(a, report, peek_group_label(a.pair[0]));
  const auto eta = load_group_vector(s.group, a.pair[0], report);
  const auto psi = load_group_vector(s.group, a.pair[1], report);
  const CVector eta_c = to_coords(s, eta, "eta"), psi_c = to_coords(s, psi, "psi");

  const auto adm = is_admissible_pair(s.comm.rep, eta_c, psi_c, c.tol);
  const auto trc = is_tracial_pair(s.comm, TraceFunctional::for_group(*s.group), eta_c, psi_c, c.tol);
  report.add(adm);
  report.add(trc);
  std::vector<bool> verdicts{adm.pass, trc.pass};
  const auto table = load_irreps(s.group, a.irreps, report);
  if (table) {
    const auto fib = fiber_admissibility_check(*table, s.p, eta.data, psi.data, c.tol);
    report.add(fib);
    verdicts.push_back(fib.pass);
    report.results["fiber_criterion"] = fib.pass;
  } else {
    report.results["fiber_criterion"] = nullptr;
  }
  report.results["admissible"] = adm.pass;
  report.results["tracial"] = trc.pass;
  bool agree = true;
  for (bool v : verdicts) agree = agree && v == verdicts.front();
  report.results["criteria_agree"] = agree;
  return finish(report, c);
}

int cmd_frame_decompose(const FrameArgs& a, const Common& c) {
  RunReport report{"frame decompose", {}, {}, {}};
  const auto s = make_setting(a, report, {});
  const auto table = load_irreps(s.group, a.irreps, report);
  if (!table) throw UnsupportedGroup("no irreducible representations for '" + s.group->label() + "'");
  const auto field = fiber_projections(*table, s.p, c.tol);
  const auto ranks = field.ranks();
  ojson fibers = ojson::array();
  ojson rank_list = ojson::array();
  for (std::size_t k = 0; k < table->size(); ++k) {
    fibers.push_back({{"label", table->irreps()[k].label},
                      {"dim", table->irreps()[k].dim},
                      {"rank", ranks[k]}});
    rank_list.push_back(ranks[k]);
  }
  const double nu = rank_measure(field);
  const double tr = natural_trace(s.p.matrix(), *s.group).real();
  report.results["ranks"] = std::move(rank_list);
  report.results["fibers"] = std::move(fibers);
  report.results["nu"] = nu;
  report.results["natural_trace"] = tr;
  report.add(make_check("rank_measure", std::abs(nu - tr), c.tol));

  const CVector v = admissible_vector_for_projection(s.p);
  const CMatrix vv = coefficient_operator(left_regular_rep(s.group), v).matrix;
  report.add(make_check("admissible_vector", (vv.adjoint() * vv - s.p.matrix()).norm(), c.tol));
  report.add(make_check("trace_of_projection", std::abs(trace_of_projection(s.p) - v.squaredNorm()),
                        c.tol));
  write_vector(c, s.group->label(), v);
  return finish(report, c);
}

// ---- gabor --------------------------------------------------------------

struct GaborArgs {
  int L = 0, a = 0, b = 0;
  std::string window;
  std::string candidate;
};

struct GaborInput {
  GaborLattice lattice;
  std::optional<CVector> window;
};

// Flags override the lattice recorded in a window file.
GaborInput gabor_input(const GaborArgs& g, RunReport& report) {
  GaborInput in;
  std::optional<io::WindowFile> wf;
  if (!g.window.empty()) wf = io::window_from_json(load_json(g.window, report));
  int L = g.L, a = g.a, b = g.b;
  if (wf) {
    if (L == 0) L = wf->lattice.L;
    if (a == 0) a = wf->lattice.a;
    if (b == 0) b = wf->lattice.b;
  }
  if (L == 0 || a == 0 || b == 0) throw InvalidParameter("lattice needs --L, --a and --b");
  in.lattice = make_lattice(L, a, b);
  if (wf) {
    if (wf->window.size() != L)
      throw DimensionMismatch("window length " + std::to_string(wf->window.size()) +
                              " != L = " + std::to_string(L));
    in.window = wf->window;
  }
  report.results["L"] = L;
  report.results["a"] = a;
  report.results["b"] = b;
  report.results["redundancy"] = in.lattice.redundancy();
  return in;
}

CVector window_or_random(const GaborInput& in, Rng& rng) {
  return in.window ? *in.window : random_vector(rng, in.lattice.L);
}

void write_window(const Common& c, const GaborLattice& lat, const CVector& w) {
  if (!c.vector_out.empty()) io::write_file(c.vector_out, io::window_to_json(lat, w).dump(2) + "\n");
}

int cmd_gabor_reference(const GaborArgs& args, const Common& c) {
  RunReport report{"gabor reference", {}, {}, {}};
  const auto in = gabor_input(args, report);
  const auto& lat = in.lattice;
  const CVector w = reference_window(lat.L, lat.a, lat.b);
  const auto sys = make_gabor_system(lat, w);
  const CMatrix s = gabor_frame_operator(sys);
  report.add(make_check("reference_tight", (s - CMatrix::Identity(lat.L, lat.L)).norm(), c.tol));
  report.add(wexler_raz_check(sys, w, c.tol));
  report.results["window"] = complex_json(w);
  write_window(c, lat, w);
  return finish(report, c);
}

int cmd_gabor_dual(const GaborArgs& args, const Common& c) {
  RunReport report{"gabor dual", {}, {}, {}};
  const auto in = gabor_input(args, report);
  Rng rng(c.seed);
  const auto sys = make_gabor_system(in.lattice, window_or_random(in, rng));
  try {
    const CVector gamma = gabor_canonical_dual(sys);
    report.add(gabor_reconstruction_check(sys, gamma, c.tol));
    report.add(wexler_raz_check(sys, gamma, c.tol));
    report.results["dual"] = complex_json(gamma);
    write_window(c, in.lattice, gamma);
  } catch (const NotInvertible&) {
    report.add(make_check("frame_vector", INFINITY, c.tol, "NotAFrame"));
  }
  return finish(report, c);
}

int cmd_gabor_wexler_raz(const GaborArgs& args, const Common& c) {
  RunReport report{"gabor wexler-raz", {}, {}, {}};
  const auto in = gabor_input(args, report);
  Rng rng(c.seed);
  const auto sys = make_gabor_system(in.lattice, window_or_random(in, rng));
  report.results["constant"] = in.lattice.density();
  CVector gamma;
  if (!args.candidate.empty()) {
    gamma = io::window_from_json(load_json(args.candidate, report)).window;
    if (gamma.size() != in.lattice.L) throw DimensionMismatch("candidate length != L");
    report.results["candidate"] = "file";
  } else {
    try {
      gamma = gabor_canonical_dual(sys);
    } catch (const NotInvertible&) {
      report.add(make_check("frame_vector", INFINITY, c.tol, "NotAFrame"));
      return finish(report, c);
    }
    report.results["candidate"] = "canonical_dual";
  }
  const auto wr = wexler_raz_check(sys, gamma, c.tol);
  const auto rec = gabor_reconstruction_check(sys, gamma, c.tol);
  report.add(wr);
  report.add(rec);
  report.results["criteria_agree"] = wr.pass == rec.pass;
  return finish(report, c);
}

int cmd_gabor_bridge(const GaborArgs& args, const Common& c) {
  RunReport report{"gabor bridge", {}, {}, {}};
  const auto in = gabor_input(args, report);
  const auto& lat = in.lattice;
  const auto wh = wh_group_build(lat.L, lat.a, lat.b);
  report.results["q"] = wh.q;
  report.results["group_order"] = wh.group->order();
  report.results["group_label"] = wh.group->label();
  report.add(make_check("group_axioms",
                        std::max(wh.rep.homomorphism_residual(), wh.rep.unitarity_residual()), c.tol));
  Rng rng(c.seed);
  CheckRecord worst = make_check("wh_bridge", 0.0, c.tol);
  std::optional<CVector> cand;
  if (!args.candidate.empty()) {
    cand = io::window_from_json(load_json(args.candidate, report)).window;
    if (cand->size() != lat.L) throw DimensionMismatch("candidate length != L");
  }
  const int rounds = in.window ? 1 : c.samples;
  for (int k = 0; k < rounds; ++k) {
    const CVector f = window_or_random(in, rng);
    const CVector g = cand ? *cand : random_vector(rng, lat.L);
    const auto r = wh_bridge_check(wh, f, g, c.tol);
    if (!(r.residual <= worst.residual)) worst = r;
  }
  report.add(worst);
  return finish(report, c);
}

std::optional<double> env_tol() {
  const char* s = std::getenv("FRAMETRACE_TOL");
  if (!s) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || s[used] != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw InvalidParameter(std::string("FRAMETRACE_TOL is not a positive number: '") + s + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame and admissibility checks for finite groups and Gabor systems", "frametrace"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--tol", c.tol, "Residual tolerance (default 1e-9, or FRAMETRACE_TOL)");
  app.add_option("--seed", c.seed, "Seed for the mt19937_64 sampler")->capture_default_str();
  app.add_option("--samples", c.samples, "Random samples per sampled check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "Write the report here instead of stdout");
  app.add_option("--vector-out", c.vector_out, "Write the computed vector or window here");

  // group
  GroupSource gsrc;
  std::string group_irreps;
  auto* group = app.add_subcommand("group", "Validate a group and its Plancherel data");
  group->fallthrough()->require_subcommand(1);
  group->add_option("--builtin", gsrc.builtin, "Builtin spec, e.g. dihedral:4");
  group->add_option("--file", gsrc.file, "Cayley table file");
  auto* analyze = group->add_subcommand("analyze", "Commutant, trace and Parseval checks");
  analyze->fallthrough();
  analyze->add_option("--irreps", group_irreps, "Irrep table file");

  // frame
  FrameArgs fa;
  auto* frame = app.add_subcommand("frame", "Coherent-state frames for the regular representation");
  frame->fallthrough()->require_subcommand(1);
  frame->add_option("--builtin", fa.src.builtin, "Builtin group spec");
  frame->add_option("--group-file", fa.src.file, "Cayley table file");
  frame->add_option("--irreps", fa.irreps, "Irrep table file");
  frame->add_option("--subspace", fa.subspace, "Vectors whose orbit spans the subspace");
  frame->add_option("--window", fa.window, "Window vector file");
  auto* fdual = frame->add_subcommand("dual", "Canonical dual window")->fallthrough();
  auto* ftight = frame->add_subcommand("tighten", "Canonical tight window")->fallthrough();
  auto* fcheck = frame->add_subcommand("check", "Admissibility, traciality and fiber criteria")
                     ->fallthrough();
  fcheck->add_option("--pair", fa.pair, "eta.json psi.json")->expected(2);
  auto* fdecomp = frame->add_subcommand("decompose", "Fiber ranks and the rank measure")->fallthrough();

  // gabor
  GaborArgs ga;
  auto* gabor = app.add_subcommand("gabor", "Finite Gabor systems");
  gabor->fallthrough()->require_subcommand(1);
  gabor->add_option("--L", ga.L, "Signal length")->check(CLI::PositiveNumber);
  gabor->add_option("--a", ga.a, "Time step")->check(CLI::PositiveNumber);
  gabor->add_option("--b", ga.b, "Modulation step")->check(CLI::PositiveNumber);
  gabor->add_option("--window", ga.window, "Window file");
  auto* gref = gabor->add_subcommand("reference", "Tight box window")->fallthrough();
  auto* gdual = gabor->add_subcommand("dual", "Canonical dual window")->fallthrough();
  auto* gwr = gabor->add_subcommand("wexler-raz", "Wexler-Raz biorthogonality")->fallthrough();
  gwr->add_option("--candidate", ga.candidate, "Candidate dual window file");
  auto* gbridge = gabor->add_subcommand("bridge", "Weyl-Heisenberg group bridge")->fallthrough();
  gbridge->add_option("--candidate", ga.candidate, "Second window file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.count("--tol") == 0) {
      if (const auto t = env_tol()) c.tol = *t;
    } else if (!(c.tol > 0.0) || !std::isfinite(c.tol)) {
      throw InvalidParameter("--tol must be a positive number");
    }

    if (*analyze) return cmd_group_analyze(gsrc, group_irreps, c);
    if (*fdual) return cmd_frame_dual(fa, c, false);
    if (*ftight) return cmd_frame_dual(fa, c, true);
    if (*fcheck) return cmd_frame_check(fa, c);
    if (*fdecomp) return cmd_frame_decompose(fa, c);
    if (*gref) return cmd_gabor_reference(ga, c);
    if (*gdual) return cmd_gabor_dual(ga, c);
    if (*gwr) return cmd_gabor_wexler_raz(ga, c);
    if (*gbridge) return cmd_gabor_bridge(ga, c);
  } catch (const Error& e) {
    std::cerr << "error: " << error_name(e) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
