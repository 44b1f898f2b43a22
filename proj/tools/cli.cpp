#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <unistd.h>

#include "subrank/bounds.hpp"
#include "subrank/degeneration.hpp"
#include "subrank/errors.hpp"
#include "subrank/hm_witness.hpp"
#include "subrank/instances.hpp"
#include "subrank/json_io.hpp"
#include "subrank/loop_group.hpp"

namespace subrank::cli {

namespace {

struct RunConfig {
  std::string field;  // "", "q" or "fp"
  std::string prime;
  std::int64_t precision = kDefaultPrecision;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
  int max_doublings = 5;
  int max_prime_retries = 2;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(cfg.out_path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + tmp.string() + "'");
    f << text;
    if (!f.flush()) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// --prime alone implies --field fp; --field fp without --prime draws a random 62-bit prime.
std::optional<Field> chosen_field(const RunConfig& cfg, std::mt19937_64& rng) {
  if (cfg.field == "q") {
    if (!cfg.prime.empty()) throw InputError("--prime given with --field q");
    return Field::rationals();
  }
  if (!cfg.prime.empty()) {
    BigInt p;
    if (p.set_str(cfg.prime, 10) != 0) throw InputError("malformed prime '" + cfg.prime + "'");
    return Field::prime_field(p);
  }
  if (cfg.field == "fp") return Field::random_62bit_prime(rng);
  return std::nullopt;
}

// An explicit --field/--prime overrides the field recorded in the input document.
void drop_field_keys(Json& j) {
  if (j.is_object()) {
    j.erase("field");
    for (auto& [key, value] : j.items()) drop_field_keys(value);
  } else if (j.is_array()) {
    for (auto& value : j) drop_field_keys(value);
  }
}

Json read_input(const std::string& path, const std::optional<Field>& chosen) {
  Json doc = read_json(path);
  if (chosen) drop_field_keys(doc);
  return doc;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& x : items) s += (s.empty() ? "" : ", ") + x;
  return s;
}

int cmd_cim(const RunConfig& cfg, const std::string& input, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(cfg.seed);
  const std::optional<Field> chosen = chosen_field(cfg, rng);
  const Field fallback = chosen.value_or(Field::rationals());
  const Json doc = read_input(input, chosen);
  std::vector<SeriesMatrix> gs;
  if (doc.is_object() && doc.contains("g")) {
    const Field f = doc.contains("field") ? field_from_json(doc.at("field")) : fallback;
    for (const Json& m : doc.at("g")) gs.push_back(series_matrix_from_json(m, f));
  } else {
    gs.push_back(series_matrix_from_json(doc, fallback));
  }
  Json gj = Json::array();
  Json decs = Json::array();
  std::vector<std::string> reasons;
  for (const SeriesMatrix& g : gs) {
    const CimDecomposition dec = cim_decompose(g, cfg.precision, cfg.max_doublings);
    const CimVerdict v = verify_cim(g, dec);
    if (!v.pass) reasons.push_back(v.reason);
    gj.push_back(to_json(g));
    decs.push_back(to_json(dec));
    std::string ws;
    for (auto w : dec.weights) ws += (ws.empty() ? "" : ", ") + std::to_string(w);
    err << "weights [" << ws << "]\n";
  }
  const bool pass = reasons.empty();
  Json doc_out{{"kind", "CimCertificate"}, {"tool_version", version()}, {"field", to_json(gs.front().field())},
               {"g", gj}, {"cim", decs}, {"verdict", pass ? "Pass" : "Fail"}};
  if (!pass) doc_out["reasons"] = reasons;
  emit(cfg, dump(doc_out), out);
  if (!pass) err << "verification failed: " << join(reasons) << "\n";
  return pass ? kOk : kFailed;
}

// `p_input`, when given, holds the tensor and `input` the curve (a list of matrices or {"g": [...]}).
int cmd_witness(const RunConfig& cfg, const std::string& input, const std::string& p_input, std::ostream& out,
                std::ostream& err) {
  std::mt19937_64 rng(cfg.seed);
  const std::optional<Field> chosen = chosen_field(cfg, rng);
  Json doc = read_input(input, chosen);
  if (!p_input.empty()) {
    if (doc.is_array()) doc = Json{{"g", doc}};
    if (!doc.is_object()) throw InputError("curve file must hold a list of matrices or {\"g\": [...]}");
    doc["p"] = read_input(p_input, chosen);
  }
  const WitnessInput in = witness_input_from_json(doc, chosen.value_or(Field::rationals()));
  const HmWitness w = hm_witness(in.g, in.p, cfg.precision, in.reps, cfg.max_doublings);
  const auto failed = verify_witness(in.g, in.p, w);
  emit(cfg, dump(witness_to_json(in, w)), out);
  if (!failed.empty()) {
    err << "witness failed: " << join(failed) << "\n";
    return kFailed;
  }
  err << "witness verified; shared limit has " << w.shared_limit.nonzero_count() << " nonzero entries\n";
  return kOk;
}

int cmd_certify(const RunConfig& cfg, std::size_t n, std::optional<std::size_t> r, std::ostream& out,
                std::ostream& err) {
  std::mt19937_64 rng(cfg.seed);
  CertifyOptions opts;
  opts.field = chosen_field(cfg, rng);
  opts.seed = rng();
  opts.max_prime_retries = cfg.max_prime_retries;
  const DegenerationCertificate cert = certify_generic_lower_bound(n, r, opts);
  emit(cfg, dump(to_json(cert)), out);
  err << to_string(cert.verdict) << ": n = " << cert.n << ", r = " << cert.r << ", jacobianRank = "
      << cert.jacobian_rank << " of " << cert.pyramid_size << " over " << cert.field.describe() << "\n";
  switch (cert.verdict) {
    case Verdict::Certified: return kOk;
    case Verdict::Refuted: return kFailed;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

int cmd_bounds(const RunConfig& cfg, std::size_t d_max, std::size_t n_min, std::size_t n_max, std::ostream& out,
               std::ostream& err) {
  if (d_max < 3) throw InputError("--d must be at least 3");
  if (n_max < 1) throw InputError("--n-max must be positive");
  if (n_min < 1) throw InputError("--n-min must be positive");
  const CrossoverTable table = crossover_scan(n_max, n_min, d_max);
  if (cfg.format == "csv") {
    std::ostringstream s;
    write_crossover_csv(table, s);
    emit(cfg, s.str(), out);
  } else {
    emit(cfg, dump(to_json(table)), out);
  }
  if (table.first_excess) err << "first strict excess at n = " << *table.first_excess << "\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& input, std::ostream& out, std::ostream& err) {
  const Json doc = read_json(input);
  if (!doc.is_object() || !doc.contains("kind")) throw InputError("document has no 'kind'");
  const std::string kind = doc.at("kind").get<std::string>();
  std::vector<std::string> failed;
  if (kind == "DegenerationCertificate") {
    const DegenerationCertificate cert = certificate_from_json(doc);
    std::mt19937_64 rng(cfg.seed);
    std::optional<Field> fresh = chosen_field(cfg, rng);
    if (!fresh) {
      do {
        fresh = Field::random_62bit_prime(rng);
      } while (*fresh == cert.field);
    }
    err << "re-checking Jacobian rank over " << fresh->describe() << "\n";
    failed = verify_certificate(cert, *fresh);
  } else if (kind == "HmWitness") {
    WitnessInput in;
    const HmWitness w = witness_from_json(doc, in);
    failed = verify_witness(in.g, in.p, w);
  } else if (kind == "CimCertificate") {
    const Field f = field_from_json(doc.at("field"));
    const Json& gs = doc.at("g");
    const Json& decs = doc.at("cim");
    if (!gs.is_array() || !decs.is_array() || gs.size() != decs.size()) throw InputError("g and cim lists differ");
    for (std::size_t i = 0; i < gs.size(); ++i) {
      const CimVerdict v = verify_cim(series_matrix_from_json(gs[i], f), cim_from_json(decs[i], f));
      if (!v.pass) failed.push_back("cim[" + std::to_string(i) + "]: " + v.reason);
    }
  } else {
    throw InputError("unknown document kind '" + kind + "'");
  }
  if (failed.empty()) {
    out << "PASS " << kind << "\n";
    return kOk;
  }
  out << "FAIL " << kind << ": " << join(failed) << "\n";
  return kFailed;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const long v = std::stol(item);
      if (v < 1) throw InputError("dimensions must be positive");
      dims.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw InputError("malformed dimension list '" + s + "'");
    }
  }
  return dims;
}

int cmd_gen(const RunConfig& cfg, bool cim, const std::string& dims_text, std::size_t n, std::ostream& out,
            std::ostream& err) {
  std::mt19937_64 rng(cfg.seed);
  const Field field = chosen_field(cfg, rng).value_or(Field::rationals());
  if (cim) {
    if (n < 1 || n > 8) throw InputError("--n must be in [1, 8]");
    const SeriesMatrix g = random_invertible_laurent(field, n, rng);
    emit(cfg, dump(to_json(g)), out);
    err << "generated " << n << "x" << n << " Laurent matrix over " << field.describe() << "\n";
    return kOk;
  }
  const auto dims = parse_dims(dims_text);
  if (dims.size() < 2) throw InputError("--dims needs at least two factors");
  const WitnessInstance inst = random_witness_instance(field, dims, rng);
  Json doc = to_json(WitnessInput{inst.g, inst.p, {}});
  doc["field"] = to_json(field);
  emit(cfg, dump(doc), out);
  err << "generated witness instance over " << field.describe() << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for subrank, border subrank and loop-group decompositions", "subrank"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--field", cfg.field, "Coefficient field")->check(CLI::IsMember({"q", "fp"}));
  app.add_option("--prime", cfg.prime, "Characteristic for --field fp");
  app.add_option("--precision", cfg.precision, "Target precision N (mod t^N)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for every randomized choice");
  app.add_option("--out", cfg.out_path, "Output path (written atomically)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--max-doublings", cfg.max_doublings, "Precision doublings before giving up")->check(CLI::NonNegativeNumber);
  app.add_option("--max-prime-retries", cfg.max_prime_retries, "Extra primes after a rank deficit")
      ->check(CLI::NonNegativeNumber);

  std::string input;
  auto* cim = app.add_subcommand("cim", "Cartan-Iwahori-Matsumoto decomposition of a matrix or tuple");
  cim->add_option("input", input, "SeriesMatrix JSON or {\"g\": [...]}")->required();
  cim->fallthrough();

  auto* witness = app.add_subcommand("witness", "Hilbert-Mumford witness for a curve and a tensor");
  std::string p_input;
  witness->add_option("input", input, "{\"g\": [...], \"p\": tensor}, or the curve alone when a tensor file follows")
      ->required();
  witness->add_option("tensor", p_input, "Tensor JSON for p");
  witness->fallthrough();

  std::size_t n = 0;
  std::optional<std::size_t> r;
  auto* certify = app.add_subcommand("certify", "Certificate for the d = 3 border subrank lower bound");
  certify->add_option("--n", n, "Dimension n")->required();
  certify->add_option("--r", r, "Target r (default floor(sqrt(4n)) - 3)");
  certify->fallthrough();

  std::size_t d_max = 3;
  std::size_t n_min = 1;
  std::size_t n_max = 0;
  auto* bounds = app.add_subcommand("bounds", "Table of lower and upper bounds");
  bounds->add_option("--d", d_max, "Largest order d (columns for d > 3 are added)");
  bounds->add_option("--n-min", n_min, "First n");
  bounds->add_option("--n-max", n_max, "Last n")->required();
  bounds->fallthrough();

  auto* verify = app.add_subcommand("verify", "Re-verify a stored certificate from scratch");
  verify->add_option("input", input, "Certificate JSON")->required();
  verify->fallthrough();

  bool gen_cim = false;
  bool gen_witness = false;
  std::string dims_text = "3,3";
  std::size_t gen_n = 3;
  auto* gen = app.add_subcommand("gen", "Generate a random test instance");
  gen->add_flag("--witness", gen_witness, "Witness input with a known-good specialization (default)");
  gen->add_flag("--cim", gen_cim, "Invertible Laurent-polynomial matrix");
  gen->add_option("--dims", dims_text, "Comma-separated tensor dimensions");
  gen->add_option("--n", gen_n, "Matrix size for --cim");
  gen->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*cim) return cmd_cim(cfg, input, out, err);
    if (*witness) return cmd_witness(cfg, input, p_input, out, err);
    if (*certify) return cmd_certify(cfg, n, r, out, err);
    if (*bounds) return cmd_bounds(cfg, d_max, n_min, n_max, out, err);
    if (*verify) return cmd_verify(cfg, input, out, err);
    if (*gen) {
      if (gen_cim && gen_witness) throw InputError("choose one of --cim and --witness");
      return cmd_gen(cfg, gen_cim, dims_text, gen_n, out, err);
    }
  } catch (const PrecisionError& e) {
    err << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const NoLimitError& e) {
    err << "no limit: " << e.what() << "\n";
    return kFailed;
  } catch (const WitnessVerificationFailure& e) {
    err << "witness verification failed: " << e.what() << "\n";
    return kFailed;
  } catch (const SingularError& e) {
    err << "SingularError: " << e.what() << "\n";
    return kInputError;
  } catch (const PlacementError& e) {
    err << "PlacementError: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed document: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"subrank"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace subrank::cli
