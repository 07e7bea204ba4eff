// sl2sheaf: Jordan types, kernel sheaves, F_i sheaves and Heller shifts of
// restricted sl2-modules, plus the full verification run.
//
// Exit codes: 0 success, 1 verification failure or incomplete computation, 2 usage error.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "sl2sheaf/verify.hpp"

namespace {

using namespace sl2sheaf;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  unsigned p = 0;
  std::vector<unsigned> primes;
  std::string family = "weyl";
  long lambda = 0;
  std::string xi;
  int i = 0;
  int max_degree = -1;
  unsigned ext_max = 8;
  std::uint64_t seed = 1;
  std::string format = "text";
  unsigned jobs = 1;
  long lambda_max = -1;
};

void check_prime(unsigned p) {
  if (p == 2) throw UsageError("p = 2 is not supported (need an odd prime p >= 3)");
  if (p < 3 || !is_prime(p)) throw UsageError("p must be an odd prime, got " + std::to_string(p));
  if (p >= 65536) throw UsageError("p must be below 65536");
}

std::vector<long> split_ints(const std::string& text, char sep) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not an integer: '" + item + "'");
    }
  }
  return out;
}

/// "s,t" over F_p, or "ext:e:c0,c1,..." for [1 : c0 + c1 x + ...] in F_{p^e}.
PointP1 parse_xi(unsigned p, const std::string& text) {
  if (text.rfind("ext:", 0) == 0) {
    const auto colon = text.find(':', 4);
    if (colon == std::string::npos) throw UsageError("--xi ext form is ext:e:c0,c1,...");
    const auto e = split_ints(text.substr(4, colon - 4), ',');
    if (e.size() != 1 || e[0] < 1 || e[0] > 16) throw UsageError("--xi extension degree must be in 1..16");
    const Field L(p, static_cast<unsigned>(e[0]));
    const auto cs = split_ints(text.substr(colon + 1), ',');
    if (cs.empty() || cs.size() > static_cast<std::size_t>(e[0])) throw UsageError("--xi needs between 1 and e coefficients");
    std::vector<Elem> digits;
    for (long c : cs) digits.push_back(Field(p).from_int(c));
    return PointP1::affine(L, L.from_digits(digits)).minimal_field();
  }
  const auto st = split_ints(text, ',');
  if (st.size() != 2) throw UsageError("--xi must be 's,t' or 'ext:e:c0,c1,...'");
  const Field k(p);
  const Elem s = k.from_int(st[0]), t = k.from_int(st[1]);
  if (s == 0 && t == 0) throw UsageError("--xi: [0:0] is not a point");
  return PointP1(k, s, t);
}

Sl2Module build_module(const RunConfig& c) {
  check_prime(c.p);
  if (c.lambda < 0) throw UsageError("--lambda must be nonnegative");
  const Field k(c.p);
  try {
    if (c.family == "weyl") return weyl(k, c.lambda);
    if (c.family == "dual-weyl") return dual_weyl(k, c.lambda);
    if (c.family == "projective") return projective(k, c.lambda);
    if (c.family == "phi") {
      if (c.xi.empty()) throw UsageError("--family phi needs --xi");
      return phi(c.lambda, parse_xi(c.p, c.xi));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown family '" + c.family + "'");
}

int cmd_jtype(const RunConfig& c) {
  const Sl2Module M = build_module(c);
  ProfileOptions opt;
  opt.ext_max = c.ext_max;
  opt.seed = c.seed;
  const auto prof = jordan_profile(M, opt);
  if (c.format == "json") {
    json j = to_json(prof);
    j["module"] = M.label();
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "module,point,field_degree,type\n";
    std::cout << M.label() << ",generic,," << prof.generic.to_string() << "\n";
    for (const auto& [pt, part] : prof.exceptional)
      std::cout << M.label() << "," << pt.to_string() << "," << pt.field().degree() << "," << part.to_string() << "\n";
  } else {
    std::cout << profile_summary(prof) << "\n";
  }
  return 0;
}

int cmd_kernel(const RunConfig& c) {
  const Sl2Module M = build_module(c);
  const KernelSheaf ks = kernel_sheaf(M, c.max_degree);
  if (c.format == "json") {
    std::cout << to_json(M, ks).dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "module,object,twist\n";
    for (int t : ks.splitting.twists()) std::cout << M.label() << ",ker^1," << t << "\n";
  } else {
    std::cout << ks.splitting.to_string() << "\n";
  }
  return 0;
}

int cmd_fi(const RunConfig& c) {
  const Sl2Module M = build_module(c);
  if (c.i < 1 || c.i > static_cast<int>(c.p)) throw UsageError("--i must be in 1..p");
  const FiData fd = fi_data(M, c.i, c.max_degree);
  if (c.format == "json") {
    std::cout << to_json(M, fd).dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "module,object,d,dim\n";
    for (std::size_t d = 0; d < fd.hilbert.size(); ++d) std::cout << M.label() << ",F_" << c.i << "," << d << "," << fd.hilbert[d] << "\n";
  } else if (fd.analysis.splitting) {
    std::cout << fd.analysis.splitting->to_string() << "\n";
  } else {
    std::cout << "undetermined at bound " << fd.max_degree << " (rank " << fd.rank() << ", degree " << fd.analysis.degree_sum << ")\n";
    return 1;
  }
  return 0;
}

int cmd_heller(const RunConfig& c) {
  check_prime(c.p);
  if (c.family != "weyl") throw UsageError("heller supports --family weyl only");
  HellerShift h;
  try {
    h = heller_shift(Field(c.p), c.lambda, c.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.format == "json") {
    json j = to_json(h);
    j["input"] = "V(" + std::to_string(c.lambda) + ")";
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "input,shift,dim,actions_equal_weyl\n";
    std::cout << "V(" << c.lambda << ")," << h.label() << "," << (h.module ? h.module->dim() : 0) << "," << h.actions_equal_weyl << "\n";
  } else {
    std::cout << (h.projective ? "0 (projective)" : h.label()) << "\n";
  }
  return 0;
}

int cmd_verify_all(const RunConfig& c) {
  VerifyConfig cfg;
  if (!c.primes.empty()) cfg.primes.assign(c.primes.begin(), c.primes.end());
  for (auto p : cfg.primes) check_prime(p);
  cfg.lambda_max = c.lambda_max;
  cfg.seed = c.seed;
  cfg.jobs = std::max(1u, c.jobs);
  cfg.ext_max = c.ext_max;
  cfg.max_degree = c.max_degree;
  const VerifyReport rep = run_verification(cfg);
  if (c.format == "json") {
    std::cout << to_json(rep).dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "criterion,case,status,detail\n";
    for (const auto& r : rep.cases) {
      std::string d = r.detail;
      for (auto& ch : d)
        if (ch == '"') ch = '\'';
      std::cout << r.criterion << ",\"" << r.key << "\"," << (r.pass ? "pass" : "fail") << ",\"" << d << "\"\n";
    }
  } else {
    for (const auto& r : rep.cases)
      if (!r.pass) std::cout << "FAIL  [" << r.criterion << "] " << r.key << ": " << r.detail << "\n";
    std::cout << summary_text(rep) << (rep.ok() ? "all checks pass" : "some checks fail") << "\n";
  }
  return rep.ok() ? 0 : 1;
}

void add_module_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--p", c.p, "odd prime characteristic")->required();
  sub->add_option("--family", c.family, "weyl, dual-weyl, projective or phi")
      ->check(CLI::IsMember({"weyl", "dual-weyl", "projective", "phi"}));
  sub->add_option("--lambda", c.lambda, "highest weight (a for projective)");
  sub->add_option("--xi", c.xi, "point of P^1 for phi: 's,t' or 'ext:e:c0,c1,...'");
}

void add_run_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--max-degree", c.max_degree, "degree bound D (default 2 lambda + 2p)");
  sub->add_option("--ext-max", c.ext_max, "largest extension degree for exceptional points");
  sub->add_option("--seed", c.seed, "seed for randomized steps");
  sub->add_option("--format", c.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jordan types and sheaves of restricted sl2-modules"};
  app.require_subcommand(1);
  RunConfig c;

  auto* jt = app.add_subcommand("jtype", "generic and exceptional local Jordan types");
  add_module_options(jt, c);
  add_run_options(jt, c);
  auto* ker = app.add_subcommand("kernel", "splitting type of the kernel of the global operator");
  add_module_options(ker, c);
  add_run_options(ker, c);
  auto* fi = app.add_subcommand("fi", "the sheaf F_i");
  add_module_options(fi, c);
  add_run_options(fi, c);
  fi->add_option("--i", c.i, "index 1..p")->required();
  auto* hel = app.add_subcommand("heller", "Heller shift of a Weyl module");
  add_module_options(hel, c);
  add_run_options(hel, c);
  auto* all = app.add_subcommand("verify-all", "run every verification case");
  all->add_option("--p", c.primes, "primes to check (default 3 5 7)");
  all->add_option("--lambda-max", c.lambda_max, "largest lambda (default 3p)");
  all->add_option("--jobs", c.jobs, "worker threads");
  add_run_options(all, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (jt->parsed()) return cmd_jtype(c);
    if (ker->parsed()) return cmd_kernel(c);
    if (fi->parsed()) return cmd_fi(c);
    if (hel->parsed()) return cmd_heller(c);
    if (all->parsed()) return cmd_verify_all(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const KernelIncomplete& e) {
    std::cerr << "error: " << e.what() << "; incomplete at bound D, try a larger --max-degree\n";
    return 1;
  } catch (const SaturationUnstable& e) {
    std::cerr << "error: " << e.what() << "; try a larger --max-degree\n";
    return 1;
  } catch (const ProfileIncomplete& e) {
    std::cerr << "error: " << e.what() << "; try a larger --ext-max\n";
    return 1;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
