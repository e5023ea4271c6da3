#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "nullcert/report.hpp"

using namespace nullcert;

namespace {

// exit codes: 0 all-verified, 1 mismatches found, 2 usage/error
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kError = 2;

TypeVector parse_lambda(const std::string& s) {
  TypeVector out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << std::endl;
  else
    write_json_file(out_path, j);
}

SemidirectGroup group_from_flags(const std::string& group_name,
                                 std::uint64_t p, std::uint64_t r, int e) {
  if (group_name == "d2p" || group_name == "dihedral") return make_dihedral(p);
  if (group_name == "g3p") return r ? make_g3p(p, r) : make_g3p(p);
  if (group_name == "direct") return make_direct(p, e);
  throw std::invalid_argument("unknown group: " + group_name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequenceability certificates for semidirect products Z_p x| H "
               "via the polynomial method"};
  app.require_subcommand(1);

  std::string family = "dihedral", lambda_text, out_path, cert_path;
  std::string mode_text = "linear", factor_mode_text = "raw";
  std::string group_name = "d2p", subset_text, table_id;
  std::uint64_t p = 7, r = 0;
  int e = 2, t = 6, abar = 0, k = 5, jobs = 1;
  std::uint64_t seed = 1, budget = 5'000'000;
  int samples = 400;
  bool verbose = false, cross = false, reduce = false;
  std::string m_text, factor_mode_pref = "any";

  auto add_search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "search determinism seed");
    cmd->add_option("--budget", budget, "work budget (frontier nodes / subsets)");
    cmd->add_option("--samples", samples, "candidate targets per arrangement");
    cmd->add_option("--jobs", jobs, "worker threads");
    cmd->add_option("--factor-mode", factor_mode_pref,
                    "restrict emitted certificates: any | raw | deduped");
  };
  auto search_config = [&]() {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.expand_budget = budget;
    cfg.samples = samples;
    cfg.jobs = jobs;
    if (factor_mode_pref == "raw")
      cfg.factor_mode = FactorModePreference::raw_only;
    else if (factor_mode_pref == "deduped")
      cfg.factor_mode = FactorModePreference::deduped_only;
    else if (factor_mode_pref != "any")
      throw std::invalid_argument("--factor-mode must be any|raw|deduped");
    return cfg;
  };

  auto* certify = app.add_subcommand("certify", "search a certificate for one type");
  certify->add_option("--family", family, "dihedral | direct2 | direct3 | g3p")->required();
  certify->add_option("--lambda", lambda_text, "type, comma separated")->required();
  certify->add_option("--mode", mode_text, "linear | sequencing");
  certify->add_option("--out", out_path, "write certificate JSON here");
  add_search_flags(certify);

  auto* verify = app.add_subcommand("verify", "verify a certificate file");
  verify->add_option("--cert", cert_path, "certificate JSON")->required();

  auto* reproduce = app.add_subcommand("reproduce", "verify a whole table");
  reproduce->add_option("--table", table_id,
                        "tab12_2 | tab10_3 | tab6_Prod | tab6_D | tab6_Prod1 | "
                        "tab6_G | tab12_2_missing")->required();
  reproduce->add_option("--out", out_path, "write the report here");
  reproduce->add_option("--jobs", jobs, "worker threads");

  auto* sweep = app.add_subcommand("sweep", "certificates for every type of a size range");
  int k_min = 3, k_max = 10;
  sweep->add_option("--family", family)->required();
  sweep->add_option("--k-min", k_min);
  sweep->add_option("--k-max", k_max);
  sweep->add_option("--mode", mode_text);
  sweep->add_option("--out", out_path);
  add_search_flags(sweep);

  auto* oracle = app.add_subcommand("oracle", "brute-force verdicts");
  oracle->add_option("--group", group_name, "d2p | g3p | direct");
  oracle->add_option("--p", p)->required();
  oracle->add_option("--r", r, "cube root for g3p");
  oracle->add_option("--e", e, "factor order for direct products");
  oracle->add_option("--k", k, "subset size to enumerate");
  oracle->add_option("--subset", subset_text, "single subset 'x.a,x.a,...'");
  oracle->add_option("--mode", mode_text, "linear | any | t_weak");
  oracle->add_option("--t", t, "window for t_weak");
  oracle->add_flag("--verbose", verbose, "per-subset verdicts");
  oracle->add_flag("--cross-check", cross, "attach certificates per type");
  oracle->add_flag("--reduce", reduce,
                   "check one representative per Z_p^* scaling orbit");
  oracle->add_option("--out", out_path);
  add_search_flags(oracle);

  auto* weak_certify = app.add_subcommand("weak-certify", "tail certificate search");
  weak_certify->add_option("--family", family)->required();
  weak_certify->add_option("--t", t)->required();
  weak_certify->add_option("--tail-lambda", lambda_text, "tail type")->required();
  weak_certify->add_option("--abar", abar)->required();
  weak_certify->add_option("--out", out_path);
  add_search_flags(weak_certify);

  auto* weak_run = app.add_subcommand("weak-run", "end-to-end t-weak sequencing");
  weak_run->add_option("--group", group_name)->required();
  weak_run->add_option("--p", p)->required();
  weak_run->add_option("--r", r);
  weak_run->add_option("--e", e);
  weak_run->add_option("--t", t)->required();
  weak_run->add_option("--subset", subset_text, "subset 'x.a,...'")->required();
  weak_run->add_option("--out", out_path);
  add_search_flags(weak_run);

  auto* transfer = app.add_subcommand(
      "transfer-check", "prime-factor transfer predicate for composite moduli");
  transfer->add_option("--m", m_text, "composite modulus")->required();
  transfer->add_option("--k", k, "subset size")->required();

  auto* regen = app.add_subcommand("regen-tables",
                                   "regenerate the derived data tables");
  regen->add_option("--out", out_path, "output directory")->required();
  add_search_flags(regen);

  CLI11_PARSE(app, argc, argv);

  try {
    auto t0 = std::chrono::steady_clock::now();
    int rc = kOk;
    if (*certify) {
      auto res = search_certificate(cert_family(family),
                                    parse_lambda(lambda_text),
                                    cert_mode_from_string(mode_text),
                                    search_config());
      Json j;
      j["command"] = "certify";
      j["version"] = kToolVersion;
      j["arrangements_tried"] = res.arrangements_tried;
      if (res.certificate) {
        j["certificate"] = certificate_to_json(*res.certificate);
        j["coefficient_factored"] =
            coefficient_factored(res.certificate->coefficient);
      } else {
        j["certificate"] = nullptr;
        j["budget_exhausted"] = res.budget_exhausted;
        j["note"] = res.notes;
        rc = kMismatch;
      }
      emit(j, out_path);
    } else if (*verify) {
      Json j = load_json_file(cert_path);
      Json rep;
      rep["command"] = "verify";
      rep["version"] = kToolVersion;
      rep["cert_digest"] = file_digest(cert_path);
      if (j.contains("t")) {
        auto outcome = verify_tail_certificate(tail_certificate_from_json(j));
        rep["valid"] = outcome.valid;
        rep["structurally_valid"] = outcome.structurally_valid;
        rep["recomputed"] = coefficient_to_json(outcome.recomputed);
        if (!outcome.notes.empty()) rep["notes"] = outcome.notes;
        rc = outcome.valid ? kOk : kMismatch;
      } else {
        auto outcome = verify_certificate(certificate_from_json(j));
        rep["valid"] = outcome.valid;
        rep["structurally_valid"] = outcome.structurally_valid;
        rep["recomputed"] = coefficient_to_json(outcome.recomputed);
        if (!outcome.notes.empty()) rep["notes"] = outcome.notes;
        rc = outcome.valid ? kOk : kMismatch;
      }
      emit(rep, out_path);
    } else if (*reproduce) {
      Json rep = reproduce_table(table_id, jobs);
      emit(rep, out_path);
      rc = rep.at("summary").at("mismatched").get<int>() == 0 ? kOk : kMismatch;
    } else if (*sweep) {
      SweepOptions opt;
      opt.family = family;
      opt.k_min = k_min;
      opt.k_max = k_max;
      opt.mode = cert_mode_from_string(mode_text);
      opt.search = search_config();
      opt.jobs = jobs;
      Json rep = cmd_sweep(opt);
      emit(rep, out_path);
      rc = rep.at("summary").at("uncertified").get<int>() == 0 ? kOk : kMismatch;
    } else if (*oracle) {
      auto g = group_from_flags(group_name, p, r, e);
      OracleOptions opt;
      opt.k = k;
      opt.subset_text = subset_text;
      if (mode_text == "linear") opt.mode = OracleMode::Linear();
      else if (mode_text == "any") opt.mode = OracleMode::Any();
      else if (mode_text == "t_weak") opt.mode = OracleMode::TWeak(t);
      else throw std::invalid_argument("oracle mode must be linear|any|t_weak");
      opt.budget = budget;
      opt.jobs = jobs;
      opt.verbose = verbose;
      opt.cross_check = cross;
      opt.scaling_reduction = reduce;
      Json rep = cmd_oracle(g, opt);
      emit(rep, out_path);
      if (rep.contains("summary"))
        rc = rep.at("summary").at("unsatisfied_total").get<std::uint64_t>() == 0
                 ? kOk
                 : kMismatch;
    } else if (*weak_certify) {
      auto res = weak_certificate_search(cert_family(family),
                                         parse_lambda(lambda_text), abar, t,
                                         search_config());
      Json j;
      j["command"] = "weak-certify";
      j["version"] = kToolVersion;
      j["arrangements_tried"] = res.arrangements_tried;
      if (res.certificate) {
        j["certificate"] = tail_certificate_to_json(*res.certificate);
        j["coefficient_factored"] =
            coefficient_factored(res.certificate->base.coefficient);
      } else {
        j["certificate"] = nullptr;
        j["budget_exhausted"] = res.budget_exhausted;
        j["note"] = res.notes;
        rc = kMismatch;
      }
      emit(j, out_path);
    } else if (*weak_run) {
      auto g = group_from_flags(group_name, p, r, e);
      Subset s = parse_subset(g, subset_text);
      TailCertificateStore store;
      auto res = assemble_weak_sequencing(g, s, t, store, search_config());
      Json j;
      j["command"] = "weak-run";
      j["version"] = kToolVersion;
      j["group"] = group_to_json(g);
      j["t"] = t;
      j["subset"] = format_subset(s);
      j["threshold_k"] = (2 * t - 3) * g.coset_count();
      if (res.ordering) {
        Json ord = Json::array();
        for (const auto& el : *res.ordering)
          ord.push_back({{"x", el.x}, {"a", el.a}});
        j["ordering"] = ord;
        j["t_weak"] = is_t_weak_sequencing(g, *res.ordering, t);
      } else {
        j["ordering"] = nullptr;
        j["soundness_alarm"] = res.soundness_alarm;
        j["note"] = res.notes;
        rc = kMismatch;
      }
      emit(j, out_path);
    } else if (*transfer) {
      BigInt m(m_text);
      bool ok = applies_to_composite(m, k);
      BigInt kfact = 1;
      for (int i = 2; i <= k; ++i) kfact *= i;
      Json j;
      j["command"] = "transfer-check";
      j["version"] = kToolVersion;
      j["m"] = bigint_to_json(m);
      j["m_factored"] = factored_string(m);
      j["k"] = k;
      j["k_factorial"] = bigint_to_json(kfact);
      j["applies"] = ok;
      emit(j, out_path);
      rc = ok ? kOk : kMismatch;
    } else if (*regen) {
      Json rep = regen_derived_tables(out_path, search_config(), jobs);
      std::cout << rep.dump(2) << std::endl;
    }
    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "[nullcert] done in " << dt << " ms\n";
    return rc;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kError;
  }
}
