// nilflow command-line interface: scriptable analysis of left-invariant
// geodesic flows on step-two nilpotent Lie groups.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "nilflow/cartan.hpp"
#include "nilflow/constructors.hpp"
#include "nilflow/dynamics.hpp"
#include "nilflow/io.hpp"
#include "nilflow/jmap.hpp"
#include "nilflow/spectrum.hpp"

namespace nf = nilflow;
using nlohmann::ordered_json;

namespace {

struct Options {
  uint64_t seed = 0;
  nf::Tolerances tol;
  std::string format = "text";
};

uint64_t default_seed() {
  if (const char* env = std::getenv("NILFLOW_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw nf::Error(nf::Err::Params, "NILFLOW_SEED must be an unsigned integer");
    }
  }
  return 0;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw nf::Error(nf::Err::Params, "cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

nf::Vec to_vec(const std::vector<double>& v) {
  nf::Vec x(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) x(static_cast<Eigen::Index>(i)) = v[i];
  return x;
}

nf::Mat read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  nf::require(in.good(), nf::Err::Io, "cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_csv_doubles(line));
    nf::require(rows.back().size() == rows.front().size(), nf::Err::Schema,
                "ragged rows in '" + path + "'");
  }
  nf::require(!rows.empty(), nf::Err::Schema, "'" + path + "' holds no matrix rows");
  nf::Mat M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c)
      M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return M;
}

std::string matrix_text(const nf::Mat& M) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    os << "  [";
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      os << (c ? ", " : " ") << nf::format_double(M(r, c));
    os << " ]\n";
  }
  return os.str();
}

ordered_json matrix_json(const nf::Mat& M) {
  auto rows = ordered_json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    auto row = ordered_json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
    rows.push_back(row);
  }
  return rows;
}

ordered_json header_json(const Options& opt, const std::string& command) {
  ordered_json doc;
  doc["version"] = nf::kVersion;
  doc["command"] = command;
  doc["seed"] = opt.seed;
  doc["tolerances"] = {{"alg", opt.tol.alg},
                       {"rank", opt.tol.rank},
                       {"num", opt.tol.num},
                       {"spec", opt.tol.spec}};
  return doc;
}

void print_header(std::ostream& os, const Options& opt, const std::string& command) {
  os << "nilflow " << command << " v" << nf::kVersion << "\n";
  os << "seed: " << opt.seed << "\n";
  os << "tolerances: alg=" << nf::format_double(opt.tol.alg)
     << " rank=" << nf::format_double(opt.tol.rank)
     << " num=" << nf::format_double(opt.tol.num)
     << " spec=" << nf::format_double(opt.tol.spec) << "\n";
}

std::string sig_str(nf::Signature s) {
  return "(" + std::to_string(s.pos) + "," + std::to_string(s.neg) + ")";
}

ordered_json spectrum_json(const nf::SpectrumReport& R) {
  ordered_json doc;
  auto ev = ordered_json::array();
  for (const auto& [z, mult] : R.eigenvalues)
    ev.push_back({{"re", z.real()}, {"im", z.imag()}, {"mult", mult}});
  doc["eigenvalues"] = ev;
  doc["counts"] = {{"k_e", R.k_e}, {"k_h", R.k_h}, {"k_f", R.k_f}, {"k_0", R.k_0}};
  doc["n"] = R.n;
  doc["unpaired_zero"] = R.unpaired_zero;
  doc["semisimple"] = R.semisimple;
  doc["verdict"] = nf::verdict_name(R.verdict);
  return doc;
}

std::string spectrum_text(const nf::SpectrumReport& R) {
  std::ostringstream os;
  os << "type (" << R.k_e << "," << R.k_h << "," << R.k_f << "), k_0 = " << R.k_0;
  if (R.unpaired_zero) os << " (+1 unpaired zero)";
  os << ", semisimple: " << (R.semisimple ? "true" : "false")
     << ", verdict: " << nf::verdict_name(R.verdict) << "\n  eigenvalues:";
  for (const auto& [z, mult] : R.eigenvalues) {
    os << " (" << nf::format_double(z.real());
    if (z.imag() != 0.0) os << (z.imag() > 0 ? "+" : "-") << nf::format_double(std::abs(z.imag())) << "i";
    os << ")x" << mult;
  }
  os << "\n";
  return os.str();
}

ordered_json class_json(const nf::ClassReport& C) {
  ordered_json doc;
  doc["carnot"] = C.carnot;
  doc["metivier"] = nf::tristate_name(C.metivier);
  doc["h_type"] = C.h_type;
  doc["pseudo_h_type"] = C.pseudo_h_type;
  doc["pseudo_h_residual"] = C.pseudo_h_residual;
  doc["evidence"] = C.evidence;
  return doc;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_check(const Options& opt, const std::string& file, int probes) {
  auto [algebra, product] = nf::load_algebra_file(file, opt.tol);
  const auto S = nf::Splitting::make(algebra, product, opt.tol);
  const auto C = nf::classify_algebra(S, probes, opt.seed);

  if (opt.format == "json") {
    ordered_json doc = header_json(opt, "check");
    doc["file"] = file;
    doc["dim"] = S.dim();
    doc["center_dim"] = S.dim_z();
    doc["signature"] = {{"ambient", {product.sig.pos, product.sig.neg}},
                        {"center", {S.sig_z().pos, S.sig_z().neg}},
                        {"complement", {S.sig_v().pos, S.sig_v().neg}}};
    doc["class_report"] = class_json(C);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_header(std::cout, opt, "check");
    std::cout << "file: " << file << "\n";
    std::cout << "dim: " << S.dim() << "\n";
    std::cout << "center dim: " << S.dim_z() << "\n";
    std::cout << "signature ambient: " << sig_str(product.sig)
              << " center: " << sig_str(S.sig_z())
              << " complement: " << sig_str(S.sig_v()) << "\n";
    std::cout << "carnot: " << (C.carnot ? "true" : "false") << "\n";
    std::cout << "metivier: " << nf::tristate_name(C.metivier) << "\n";
    std::cout << "h_type: " << (C.h_type ? "true" : "false") << "\n";
    std::cout << "pseudo_h_type: " << (C.pseudo_h_type ? "true" : "false") << "\n";
    std::cout << "evidence: " << C.evidence << "\n";
  }
  return 0;
}

int cmd_analyze(const Options& opt, const std::string& file, const std::string& z_csv,
                const std::string& y_csv) {
  auto [algebra, product] = nf::load_algebra_file(file, opt.tol);
  const auto S = nf::Splitting::make(algebra, product, opt.tol);

  nf::Vec Y;
  if (!y_csv.empty()) {
    Y = to_vec(parse_csv_doubles(y_csv));
    nf::require(Y.size() == S.dim(), nf::Err::Dim, "--Y must have the algebra dimension");
  } else {
    const nf::Vec zc = to_vec(parse_csv_doubles(z_csv));
    nf::require(zc.size() == S.dim_z(), nf::Err::Dim,
                "--Z must have the centre dimension " + std::to_string(S.dim_z()));
    Y = S.from_z(zc);
  }

  const nf::Vec Yz = S.z_part(Y);
  const auto J = nf::j_operator(S, Yz);
  auto [full, orbit] = nf::williamson_on_orbit(J, opt.tol);
  const nf::Mat kernel = nf::equilibria(S, Yz);
  const auto O = nf::coadjoint_orbit(S, Y);

  // Generic = maximal rank of j(Z) over seeded directions and basis vectors.
  int max_rank = O.dim;
  const int dz = S.dim_z();
  for (int i = 0; i < dz; ++i)
    max_rank = std::max(max_rank,
                        nf::rank_of(nf::j_operator_z(S, nf::Vec::Unit(dz, i)).matrix, opt.tol.rank));
  for (int p = 0; p < 32; ++p) {
    std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ull * (p + 1)));
    std::normal_distribution<double> gauss;
    nf::Vec zc(dz);
    for (int i = 0; i < dz; ++i) zc(i) = gauss(rng);
    if (zc.norm() < 1e-12) continue;
    max_rank = std::max(max_rank, nf::rank_of(nf::j_operator_z(S, zc).matrix, opt.tol.rank));
  }
  const bool generic = O.dim == max_rank;

  if (opt.format == "json") {
    ordered_json doc = header_json(opt, "analyze");
    doc["file"] = file;
    doc["Y"] = matrix_json(Y.transpose())[0];
    doc["j_matrix"] = matrix_json(J.matrix);
    doc["spectrum_full"] = spectrum_json(full);
    doc["spectrum_orbit"] = spectrum_json(orbit);
    doc["equilibrium_kernel"] = matrix_json(kernel.transpose());
    doc["orbit_dim"] = O.dim;
    doc["generic"] = generic;
    doc["verdict"] = nf::verdict_name(full.verdict);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_header(std::cout, opt, "analyze");
    std::cout << "file: " << file << "\n";
    std::cout << "j(Y_z) on the complement basis:\n" << matrix_text(J.matrix);
    std::cout << "full spectrum: " << spectrum_text(full);
    std::cout << "orbit-restricted spectrum: " << spectrum_text(orbit);
    std::cout << "equilibrium kernel dim: " << kernel.cols() << "\n";
    if (kernel.cols() > 0) std::cout << matrix_text(kernel.transpose());
    std::cout << "orbit dim: " << O.dim << "\n";
    std::cout << "generic orbit: " << (generic ? "true" : "false");
    if (!generic)
      std::cout << " (non-generic kernel directions: " << (max_rank - O.dim) << ")";
    std::cout << "\n";
    std::cout << "verdict: " << nf::verdict_name(full.verdict) << "\n";
  }
  return 0;
}

int cmd_simulate(const Options& opt, const std::string& file, const std::string& y0_csv,
                 double T, int samples, int group_steps, const std::string& blocks_file,
                 const std::string& out_path) {
  auto [algebra, product] = nf::load_algebra_file(file, opt.tol);
  const auto S = nf::Splitting::make(algebra, product, opt.tol);
  const nf::Vec Y0 = to_vec(parse_csv_doubles(y0_csv));
  nf::require(Y0.size() == S.dim(), nf::Err::Dim, "--Y0 must have the algebra dimension");
  nf::require(group_steps > 0 || samples >= 2, nf::Err::Params,
              "--samples must be at least 2");
  nf::require(T != 0.0, nf::Err::Params, "--T must be nonzero");

  std::optional<nf::MetricBlocks> blocks;
  if (!blocks_file.empty()) blocks = nf::load_blocks_file(blocks_file, S);

  nf::Trajectory tr;
  if (group_steps > 0) {
    tr = nf::reconstruct_group(S, blocks, Y0, nf::GroupElement{nf::Vec::Zero(S.dim())}, T,
                               group_steps);
  } else {
    const double lo = std::min(0.0, T), hi = std::max(0.0, T);
    std::vector<double> times(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
      times[static_cast<size_t>(i)] = lo + (hi - lo) * i / (samples - 1);
    tr = nf::flow_exact(S, blocks, Y0, times);
  }

  if (out_path.empty()) {
    nf::write_trajectory_csv(std::cout, tr);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    nf::require(out.good(), nf::Err::Io, "cannot open '" + out_path + "'");
    nf::write_trajectory_csv(out, tr);
    nf::require(out.good(), nf::Err::Io, "write failure on '" + out_path + "'");
  }
  return 0;
}

int cmd_cartan(const Options& opt, const std::string& family, int p, int q, int ell, int k,
               const std::string& h_csv, int trials) {
  nf::CartanParams P;
  if (family == "D") P.family = nf::CartanFamily::D;
  else if (family == "Dprime") P.family = nf::CartanFamily::Dprime;
  else if (family == "B") P.family = nf::CartanFamily::B;
  else throw nf::Error(nf::Err::Params, "family must be D, Dprime or B");
  P.p = p;
  P.q = q;
  P.ell = ell;
  P.k = k;

  if (!h_csv.empty()) {
    P.h = parse_csv_doubles(h_csv);
    const auto C = nf::cartan_matrix(P);
    const auto want = nf::predicted_williamson(P);
    auto got = nf::classify_eigenvalues(C.matrix, opt.tol);
    got.verdict = nf::stability_verdict(got);
    if (opt.format == "csv") {
      nf::write_matrix_csv(std::cout, C.matrix);
      return 0;
    }
    if (opt.format == "json") {
      ordered_json doc = header_json(opt, "cartan");
      doc["family"] = family;
      doc["p"] = p; doc["q"] = q; doc["l"] = ell; doc["k"] = k;
      doc["h"] = P.h;
      doc["matrix"] = matrix_json(C.matrix);
      doc["predicted"] = {{"k_e", want.k_e}, {"k_h", want.k_h}, {"k_f", want.k_f},
                          {"rank_deficient", want.rank_deficient}};
      doc["classified"] = spectrum_json(got);
      std::cout << doc.dump(2) << "\n";
      return 0;
    }
    print_header(std::cout, opt, "cartan");
    std::cout << "family " << family << " so(" << p << "," << q << "), l=" << ell
              << ", k=" << k << "\n";
    std::cout << "matrix:\n" << matrix_text(C.matrix);
    std::cout << "predicted type (" << want.k_e << "," << want.k_h << "," << want.k_f << ")";
    if (want.rank_deficient) std::cout << " [rank-deficient h: type will differ]";
    std::cout << "\n";
    std::cout << "classified " << spectrum_text(got);
    return 0;
  }

  const auto R = nf::cross_check(P, trials, opt.seed, opt.tol);
  P.h.assign(static_cast<size_t>(P.n()), 1.0);  // formula only below
  const auto want = nf::predicted_williamson(P);
  if (opt.format == "json") {
    ordered_json doc = header_json(opt, "cartan");
    doc["family"] = family;
    doc["p"] = p; doc["q"] = q; doc["l"] = ell; doc["k"] = k;
    doc["predicted"] = {{"k_e", want.k_e}, {"k_h", want.k_h}, {"k_f", want.k_f}};
    doc["trials"] = R.trials;
    doc["matches"] = R.matches;
    doc["skipped"] = R.skipped;
    auto mm = ordered_json::array();
    for (const auto& h : R.mismatched_h) mm.push_back(h);
    doc["mismatched_h"] = mm;
    std::cout << doc.dump(2) << "\n";
  } else {
    print_header(std::cout, opt, "cartan");
    std::cout << "family " << family << " so(" << p << "," << q << "), l=" << ell
              << ", k=" << k << "\n";
    std::cout << "predicted (" << want.k_e << "," << want.k_h << "," << want.k_f << "); "
              << R.matches << "/" << R.trials << " match";
    if (R.skipped) std::cout << " (" << R.skipped << " skipped)";
    std::cout << "\n";
    for (const auto& h : R.mismatched_h) {
      std::cout << "mismatch at h =";
      for (double v : h) std::cout << " " << nf::format_double(v);
      std::cout << "\n";
    }
  }
  return R.mismatched_h.empty() ? 0 : 1;
}

int cmd_hr(const Options& opt, const std::string& phi_file, const std::string& sig1_csv,
           const std::string& sig2_csv) {
  const nf::Mat phi = read_matrix_csv(phi_file);
  auto parse_sig = [](const std::string& text) {
    const auto v = parse_csv_doubles(text);
    nf::require(v.size() == 2, nf::Err::Params, "signatures are given as p,q");
    return nf::Signature{static_cast<int>(v[0]), static_cast<int>(v[1])};
  };
  const nf::Signature s1 = parse_sig(sig1_csv);
  const nf::Signature s2 = parse_sig(sig2_csv);
  const auto R = nf::indefinite_svd(phi, s1, s2, opt.tol);
  const auto W = nf::hr_williamson(R, static_cast<int>(phi.rows()),
                                   static_cast<int>(phi.cols()));

  if (opt.format == "json") {
    ordered_json doc = header_json(opt, "hr");
    doc["phi"] = matrix_json(phi);
    doc["sig1"] = {s1.pos, s1.neg};
    doc["sig2"] = {s2.pos, s2.neg};
    doc["d"] = {R.d1, R.d2, R.d3, R.d4};
    doc["rank"] = R.rank;
    doc["williamson"] = {{"k_e", W.k_e}, {"k_h", W.k_h}, {"k_f", W.k_f},
                         {"zero_pairs", W.zero_pairs}, {"unpaired_zero", W.unpaired_zero}};
    doc["basisA"] = matrix_json(R.basisA);
    doc["basisB"] = matrix_json(R.basisB);
    doc["reconstructed"] = matrix_json(R.reconstructed);
    std::cout << doc.dump(2) << "\n";
  } else {
    print_header(std::cout, opt, "hr");
    std::cout << "Phi (" << phi.rows() << "x" << phi.cols() << "), signatures "
              << sig_str(s1) << " / " << sig_str(s2) << "\n";
    std::cout << "(d) = (" << R.d1 << "," << R.d2 << "," << R.d3 << "," << R.d4
              << "), rank " << R.rank << "\n";
    std::cout << "type (" << W.k_e << "," << W.k_h << "," << W.k_f << "), zero pairs "
              << W.zero_pairs << (W.unpaired_zero ? " (+1 unpaired zero)" : "") << "\n";
    std::cout << "reconstructed Phi in the new bases:\n" << matrix_text(R.reconstructed);
  }
  return 0;
}

int cmd_catalog(const Options& opt, const std::string& action, const std::string& name,
                const std::string& out_path) {
  if (action == "list") {
    for (const auto& n : nf::catalog_names()) std::cout << n << "\n";
    return 0;
  }
  nf::require(action == "emit", nf::Err::Params, "catalog action must be list or emit");
  auto [algebra, product] = nf::builtin(name, opt.tol);
  const std::string text = nf::algebra_to_json(algebra, product);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    nf::require(out.good(), nf::Err::Io, "cannot open '" + out_path + "'");
    out << text;
    nf::require(out.good(), nf::Err::Io, "write failure on '" + out_path + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stability analysis for pseudo-Riemannian geodesic flows of step-two "
               "nilpotent Lie groups"};
  app.set_help_flag("--help", "print help");  // frees -h for the cartan --h option
  app.require_subcommand(1);

  Options opt;
  bool seed_given = false;
  app.add_option("--seed", opt.seed, "random seed (default: NILFLOW_SEED or 0)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--tau-alg", opt.tol.alg, "tolerance for algebraic identities");
  app.add_option("--tau-rank", opt.tol.rank, "relative rank/kernel dead band");
  app.add_option("--tau-num", opt.tol.num, "relative tolerance for derived identities");
  app.add_option("--tau-spec", opt.tol.spec, "relative eigenvalue dead band");
  app.add_option("--format", opt.format, "output format: text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  auto* check = app.add_subcommand("check", "validate an algebra file and classify it");
  std::string check_file;
  int probes = 64;
  check->add_option("file", check_file, "algebra-spec JSON document")->required();
  check->add_option("--probes", probes, "random Metivier probes");

  auto* analyze = app.add_subcommand("analyze", "j-mapping, Williamson types and verdict");
  std::string an_file, an_z, an_y;
  analyze->add_option("file", an_file)->required();
  auto* zopt = analyze->add_option("--Z", an_z, "centre coordinates of Z");
  analyze->add_option("--Y", an_y, "ambient coordinates of Y")->excludes(zopt);

  auto* simulate = app.add_subcommand("simulate", "closed-form flow sampled to CSV");
  std::string sim_file, sim_y0, sim_blocks, sim_out;
  double sim_T = 1.0;
  int sim_samples = 100, sim_group = 0;
  simulate->add_option("file", sim_file)->required();
  simulate->add_option("--Y0", sim_y0, "initial state, ambient coordinates")->required();
  simulate->add_option("--T", sim_T, "final time (negative runs backwards)")->required();
  simulate->add_option("--samples", sim_samples, "number of CSV rows");
  simulate->add_option("--group", sim_group, "reconstruct q(t) with this many steps");
  simulate->add_option("--blocks", sim_blocks, "metric-blocks JSON file");
  simulate->add_option("--out", sim_out, "output path (default: stdout)");

  auto* cartan = app.add_subcommand("cartan", "canonical Cartan matrices of so(p,q)");
  cartan->set_help_flag("--help", "print help");
  std::string ct_family, ct_h;
  int ct_p = 0, ct_q = 0, ct_l = 0, ct_k = 0, ct_trials = 16;
  cartan->add_option("family", ct_family, "D | Dprime | B")->required();
  cartan->add_option("p", ct_p)->required();
  cartan->add_option("q", ct_q)->required();
  cartan->add_option("--l", ct_l, "number of paired rotation parameters");
  cartan->add_option("--k", ct_k, "number of focus-focus blocks");
  cartan->add_option("--h", ct_h, "explicit h parameters (comma separated)");
  cartan->add_option("--trials", ct_trials, "seeded generic draws for cross-check");

  auto* hr = app.add_subcommand("hr", "indefinite SVD and Williamson type of Phi");
  std::string hr_phi, hr_sig1, hr_sig2;
  hr->add_option("phi", hr_phi, "CSV file with the matrix of Phi")->required();
  hr->add_option("--sig1", hr_sig1, "signature p,q of v1")->required();
  hr->add_option("--sig2", hr_sig2, "signature p,q of v2")->required();

  auto* catalog = app.add_subcommand("catalog", "list or emit built-in algebras");
  for (auto* sub : {check, analyze, simulate, cartan, hr, catalog}) sub->fallthrough();
  std::string cat_action, cat_name, cat_out;
  catalog->add_option("action", cat_action, "list | emit")->required();
  catalog->add_option("name", cat_name, "catalog entry for emit");
  catalog->add_option("--out", cat_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
    if (!seed_given) opt.seed = default_seed();

    if (*check) return cmd_check(opt, check_file, probes);
    if (*analyze) {
      nf::require(!an_z.empty() || !an_y.empty(), nf::Err::Params,
                  "analyze needs --Z or --Y");
      return cmd_analyze(opt, an_file, an_z, an_y);
    }
    if (*simulate)
      return cmd_simulate(opt, sim_file, sim_y0, sim_T, sim_samples, sim_group, sim_blocks,
                          sim_out);
    if (*cartan) return cmd_cartan(opt, ct_family, ct_p, ct_q, ct_l, ct_k, ct_h, ct_trials);
    if (*hr) return cmd_hr(opt, hr_phi, hr_sig1, hr_sig2);
    if (*catalog) return cmd_catalog(opt, cat_action, cat_name, cat_out);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const nf::Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == nf::Err::Params) std::cerr << "run with --help for usage\n";
    return nf::err_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
