#include "subrank/json_io.hpp"

#include "subrank/errors.hpp"

namespace subrank {

namespace {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return member(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad value for '") + key + "': " + e.what());
  }
}

const Json& array_member(const Json& j, const char* key) {
  const Json& a = member(j, key);
  if (!a.is_array()) throw InputError(std::string("'") + key + "' must be an array");
  return a;
}

Scalar scalar_from_json(const Json& j, const Field& field) {
  if (j.is_string()) return field.parse(j.get<std::string>());
  if (j.is_number_integer()) return field.from_integer(BigInt(std::to_string(j.get<long long>())));
  throw InputError("scalars must be decimal strings");
}

BigInt bigint_from_json(const Json& j) {
  BigInt v;
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (!j.is_string() || v.set_str(j.get<std::string>(), 10) != 0) throw InputError("malformed integer");
  return v;
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw InputError(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

Field field_or(const Json& j, const Field& fallback) {
  return j.is_object() && j.contains("field") ? field_from_json(j.at("field")) : fallback;
}

}  // namespace

const char* version() { return SUBRANK_VERSION; }

Json to_json(const Field& field) {
  if (field.is_rationals()) return Json{{"kind", "Q"}};
  return Json{{"kind", "Fp"}, {"p", field.characteristic().get_str()}};
}

Field field_from_json(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "Q") return Field::rationals();
  if (kind == "Fp") return Field::prime_field(bigint_from_json(member(j, "p")));
  throw InputError("unknown field kind '" + kind + "'");
}

Json to_json(const LaurentSeries& s) {
  Json coeffs = Json::array();
  for (const Scalar& c : s.coefficients()) coeffs.push_back(s.field().format(c));
  const std::int64_t trunc = s.is_exact() ? s.end_exponent() : *s.truncation();
  const std::int64_t val = s.has_certified_valuation() ? s.offset() : (s.is_exact() ? 0 : trunc);
  return Json{{"val", val}, {"coeffs", coeffs}, {"trunc", s.is_exact() && s.is_zero() ? 0 : trunc},
              {"exact", s.is_exact()}};
}

LaurentSeries series_from_json(const Json& j, const Field& field) {
  if (j.is_string() || j.is_number_integer()) return LaurentSeries::constant(field, scalar_from_json(j, field));
  const auto val = get<std::int64_t>(j, "val");
  std::vector<Scalar> coeffs;
  for (const Json& c : array_member(j, "coeffs")) coeffs.push_back(scalar_from_json(c, field));
  const bool exact = j.contains("exact") ? get<bool>(j, "exact") : false;
  if (exact) return LaurentSeries::polynomial(field, val, std::move(coeffs));
  const auto trunc = get<std::int64_t>(j, "trunc");
  if (trunc < val + static_cast<std::int64_t>(coeffs.size())) {
    throw InputError("series coefficients extend beyond the truncation order");
  }
  if (coeffs.empty()) return LaurentSeries::zero_to_precision(field, trunc);
  return LaurentSeries::truncated(field, val, std::move(coeffs), trunc);
}

Json to_json(const SeriesMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return Json{{"field", to_json(m.field())}, {"rows", rows}};
}

SeriesMatrix series_matrix_from_json(const Json& j, const Field& fallback) {
  const Field field = field_or(j, fallback);
  const Json& rows = j.is_array() ? j : array_member(j, "rows");
  if (!rows.is_array() || rows.empty()) throw InputError("matrix needs at least one row");
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  std::vector<LaurentSeries> entries;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != cols || cols == 0) throw InputError("ragged or empty matrix rows");
    for (const Json& e : row) entries.push_back(series_from_json(e, field));
  }
  return SeriesMatrix(field, rows.size(), cols, std::move(entries));
}

Json scalar_rows_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m.field().format(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& rows, const Field& field) {
  if (!rows.is_array() || rows.empty()) throw InputError("matrix needs at least one row");
  std::vector<std::vector<Scalar>> data;
  for (const Json& row : rows) {
    if (!row.is_array() || row.size() != rows[0].size()) throw InputError("ragged matrix rows");
    std::vector<Scalar> r;
    for (const Json& e : row) r.push_back(scalar_from_json(e, field));
    data.push_back(std::move(r));
  }
  return Matrix(field, data);
}

Json to_json(const CimDecomposition& dec) {
  return Json{{"h1", to_json(dec.h1)}, {"weights", dec.weights}, {"h2", to_json(dec.h2)}, {"precision", dec.precision}};
}

CimDecomposition cim_from_json(const Json& j, const Field& field) {
  CimDecomposition dec;
  dec.h1 = series_matrix_from_json(member(j, "h1"), field);
  dec.h2 = series_matrix_from_json(member(j, "h2"), field);
  dec.weights = get<std::vector<std::int64_t>>(j, "weights");
  dec.precision = get<std::int64_t>(j, "precision");
  return dec;
}

Json to_json(const Tensor& t) {
  Json entries = Json::array();
  for (const Index& idx : t.support()) {
    Json one_based = Json::array();
    for (std::size_t x : idx) one_based.push_back(x + 1);
    entries.push_back(Json{{"idx", one_based}, {"value", t.field().format(t.at(idx))}});
  }
  return Json{{"dims", t.dims()}, {"entries", entries}, {"field", to_json(t.field())}};
}

Tensor tensor_from_json(const Json& j, const Field& fallback) {
  const Field field = field_or(j, fallback);
  std::vector<std::size_t> dims;
  for (const Json& n : array_member(j, "dims")) dims.push_back(size_from_json(n, "dimension"));
  if (dims.size() < 2) throw InputError("tensors need order at least 2");
  Tensor t(field, dims);
  for (const Json& e : array_member(j, "entries")) {
    const Json& idx_json = member(e, "idx");
    if (!idx_json.is_array() || idx_json.size() != dims.size()) throw InputError("entry index has the wrong order");
    Index idx;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      const std::size_t x = size_from_json(idx_json[i], "index");
      if (x < 1 || x > dims[i]) throw InputError("entry index out of range");
      idx.push_back(x - 1);
    }
    t.set(idx, scalar_from_json(member(e, "value"), field));
  }
  return t;
}

Json to_json(const OneParamSubgroup& lambda) {
  Json factors = Json::array();
  for (const SubgroupFactor& f : lambda.factors()) {
    Json weights = Json::array();
    for (const BigInt& w : f.weights) weights.push_back(w.get_str());
    factors.push_back(Json{{"basis", f.basis ? scalar_rows_to_json(*f.basis) : Json("standard")}, {"weights", weights}});
  }
  return Json{{"field", to_json(lambda.field())}, {"factors", factors}};
}

OneParamSubgroup subgroup_from_json(const Json& j, const Field& field) {
  const Field f = field_or(j, field);
  std::vector<SubgroupFactor> factors;
  for (const Json& fj : array_member(j, "factors")) {
    SubgroupFactor factor;
    for (const Json& w : array_member(fj, "weights")) factor.weights.push_back(bigint_from_json(w));
    const Json& basis = member(fj, "basis");
    if (!(basis.is_string() && basis.get<std::string>() == "standard")) factor.basis = matrix_from_json(basis, f);
    factors.push_back(std::move(factor));
  }
  return OneParamSubgroup(f, std::move(factors));
}

std::string to_string(FactorRep rep) { return rep == FactorRep::Sym3 ? "sym3" : "std"; }

FactorRep factor_rep_from_string(const std::string& s) {
  if (s == "std" || s == "standard") return FactorRep::Standard;
  if (s == "sym3") return FactorRep::Sym3;
  throw InputError("unknown representation '" + s + "'");
}

Json to_json(const WitnessInput& in) {
  Json g = Json::array();
  for (const SeriesMatrix& m : in.g) g.push_back(to_json(m));
  Json reps = Json::array();
  for (FactorRep r : in.reps) reps.push_back(to_string(r));
  Json out{{"g", g}, {"p", to_json(in.p)}};
  if (!in.reps.empty()) out["rep"] = reps;
  return out;
}

WitnessInput witness_input_from_json(const Json& j, const Field& fallback) {
  WitnessInput in;
  const Field field = field_or(j, fallback);
  for (const Json& m : array_member(j, "g")) in.g.push_back(series_matrix_from_json(m, field));
  in.p = tensor_from_json(member(j, "p"), field);
  if (j.contains("rep")) {
    for (const Json& r : array_member(j, "rep")) {
      if (!r.is_string()) throw InputError("representations must be strings");
      in.reps.push_back(factor_rep_from_string(r.get<std::string>()));
    }
  }
  for (const SeriesMatrix& m : in.g) require_same_field(m.field(), in.p.field(), "witness input");
  return in;
}

Json witness_to_json(const WitnessInput& in, const HmWitness& w) {
  Json cim = Json::array();
  for (const CimDecomposition& d : w.cim) cim.push_back(to_json(d));
  Json translation = Json::array();
  for (const Matrix& m : w.translation) translation.push_back(scalar_rows_to_json(m));
  Json reps = Json::array();
  for (FactorRep r : w.reps) reps.push_back(to_string(r));
  return Json{{"kind", "HmWitness"},
              {"tool_version", version()},
              {"field", to_json(in.p.field())},
              {"input", to_json(in)},
              {"rep", reps},
              {"lambda", to_json(w.lambda)},
              {"q", to_json(w.q)},
              {"qTilde", to_json(w.q_tilde)},
              {"sharedLimit", to_json(w.shared_limit)},
              {"translation", translation},
              {"cim", cim}};
}

HmWitness witness_from_json(const Json& j, WitnessInput& in) {
  if (get<std::string>(j, "kind") != "HmWitness") throw InputError("not a witness document");
  const Field field = field_from_json(member(j, "field"));
  in = witness_input_from_json(member(j, "input"), field);
  HmWitness w{.reps = {},
              .lambda = subgroup_from_json(member(j, "lambda"), field),
              .q = tensor_from_json(member(j, "q"), field),
              .q_tilde = tensor_from_json(member(j, "qTilde"), field),
              .shared_limit = tensor_from_json(member(j, "sharedLimit"), field),
              .translation = {},
              .cim = {}};
  for (const Json& r : array_member(j, "rep")) w.reps.push_back(factor_rep_from_string(r.get<std::string>()));
  for (const Json& m : array_member(j, "translation")) w.translation.push_back(matrix_from_json(m, field));
  for (const Json& d : array_member(j, "cim")) w.cim.push_back(cim_from_json(d, field));
  return w;
}

Json to_json(const DegenerationCertificate& cert) {
  Json weights = Json::array();
  for (const auto& factor : cert.profile.weights) {
    Json ws = Json::array();
    for (const BigInt& w : factor) ws.push_back(w.get_str());
    weights.push_back(std::move(ws));
  }
  Json placements = Json::array();
  for (const Placement& p : cert.placements) {
    placements.push_back(Json{{"parity", p.parity == Placement::Parity::Even ? "even" : "odd"},
                              {"s", p.s},
                              {"layer", p.layer},
                              {"start", p.start},
                              {"end", p.end}});
  }
  return Json{{"kind", "DegenerationCertificate"},
              {"tool_version", version()},
              {"n", cert.n},
              {"r", cert.r},
              {"profile", Json{{"dims", cert.profile.dims}, {"weights", weights}}},
              {"S", to_json(cert.s)},
              {"TTilde", to_json(cert.t_tilde)},
              {"placements", placements},
              {"limitCheck", cert.limit_check ? "Pass" : "Fail"},
              {"sRecognized", cert.s_recognized},
              {"jacobianRank", cert.jacobian_rank},
              {"pyramidSize", cert.pyramid_size},
              {"field", to_json(cert.field)},
              {"prime", cert.field.is_rationals() ? std::string("Q") : cert.field.characteristic().get_str()},
              {"primesTried", cert.primes_tried},
              {"randomBlocks", cert.random_blocks},
              {"verdict", to_string(cert.verdict)}};
}

DegenerationCertificate certificate_from_json(const Json& j) {
  if (get<std::string>(j, "kind") != "DegenerationCertificate") throw InputError("not a degeneration certificate");
  DegenerationCertificate cert;
  cert.n = size_from_json(member(j, "n"), "n");
  cert.r = size_from_json(member(j, "r"), "r");
  cert.field = field_from_json(member(j, "field"));
  const Json& profile = member(j, "profile");
  for (const Json& n : array_member(profile, "dims")) cert.profile.dims.push_back(size_from_json(n, "dimension"));
  for (const Json& factor : array_member(profile, "weights")) {
    std::vector<BigInt> ws;
    for (const Json& w : factor) ws.push_back(bigint_from_json(w));
    cert.profile.weights.push_back(std::move(ws));
  }
  cert.s = tensor_from_json(member(j, "S"), cert.field);
  cert.t_tilde = tensor_from_json(member(j, "TTilde"), cert.field);
  for (const Json& p : array_member(j, "placements")) {
    const auto parity = get<std::string>(p, "parity");
    if (parity != "even" && parity != "odd") throw InputError("placement parity must be even or odd");
    cert.placements.push_back({parity == "even" ? Placement::Parity::Even : Placement::Parity::Odd,
                               size_from_json(member(p, "s"), "s"), size_from_json(member(p, "layer"), "layer"),
                               size_from_json(member(p, "start"), "start"), size_from_json(member(p, "end"), "end")});
  }
  cert.limit_check = get<std::string>(j, "limitCheck") == "Pass";
  cert.s_recognized = get<bool>(j, "sRecognized");
  cert.jacobian_rank = size_from_json(member(j, "jacobianRank"), "jacobianRank");
  cert.pyramid_size = size_from_json(member(j, "pyramidSize"), "pyramidSize");
  cert.primes_tried = get<std::vector<std::string>>(j, "primesTried");
  cert.random_blocks = get<bool>(j, "randomBlocks");
  cert.verdict = verdict_from_string(get<std::string>(j, "verdict"));
  return cert;
}

Json to_json(const CrossoverTable& table) {
  Json rows = Json::array();
  for (const CrossoverRow& row : table.rows) {
    Json r{{"n", row.n},
           {"d3_lower", row.d3_lower},
           {"generic_subrank", row.generic_subrank},
           {"dmz_lo", row.dmz_lo},
           {"border_upper", row.border_upper},
           {"excess_flag", row.excess}};
    for (std::size_t i = 0; i < row.border_upper_higher.size(); ++i) {
      r["border_upper_d" + std::to_string(i + 4)] = row.border_upper_higher[i];
    }
    rows.push_back(std::move(r));
  }
  Json out{{"kind", "CrossoverTable"}, {"tool_version", version()}, {"d_max", table.d_max}, {"rows", rows}};
  out["first_excess"] = table.first_excess ? Json(*table.first_excess) : Json(nullptr);
  return out;
}

}  // namespace subrank
