#include "fflab/report.hpp"

namespace fflab::report {

namespace {

Json poly_list(const std::vector<Poly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p));
  return a;
}

Json optional_bool(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

template <class T>
Json array_of(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

}  // namespace

std::string to_string(Irreducibility v) {
  switch (v) {
    case Irreducibility::Irreducible: return "irreducible";
    case Irreducibility::Reducible: return "reducible";
    case Irreducibility::Unknown: return "unknown";
  }
  return "unknown";
}

Json to_json(const Factorization& f, const Field& field) {
  Json j;
  j["unit"] = field->format(f.unit);
  j["factors"] = Json::array();
  for (const auto& fac : f.factors) {
    j["factors"].push_back(Json{{"factor", to_string(fac.poly)}, {"multiplicity", fac.multiplicity}});
  }
  return j;
}

Json to_json(const IrreducibilityCertificate& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["evidence"] = c.evidence;
  if (c.factorization) {
    j["factorization"] = Json::array({to_string(c.factorization->first), to_string(c.factorization->second)});
  }
  return j;
}

Json to_json(const FactorBoundReport& r) {
  Json j;
  j["M"] = r.max_degree;
  j["n"] = r.x_degree;
  j["bound"] = r.bound;
  j["entries"] = Json::array();
  for (const auto& e : r.entries) {
    j["entries"].push_back(Json{{"factor", std::string(1, e.factor)},
                                {"x_power", e.x_power},
                                {"t_degree", e.t_degree},
                                {"within", e.within}});
  }
  j["pass"] = r.pass;
  return j;
}

Json to_json(const CarlitzImage& c) {
  Json j;
  j["a"] = to_string(c.source);
  j["tau_coefficients"] = poly_list(c.twisted.coeffs());
  j["qpolynomial"] = to_string(c.qpolynomial());
  return j;
}

Json to_json(const CyclotomicField& c) {
  Json j;
  j["modulus"] = to_string(c.modulus());
  j["prime"] = to_string(c.prime());
  j["exponent"] = c.exponent();
  j["psi"] = to_string(c.psi());
  j["phi"] = c.phi();
  j["generator"] = c.units().generator ? Json(to_string(*c.units().generator)) : Json(nullptr);
  Json table = Json::object();
  for (std::size_t i = 0; i < c.units().elements.size(); ++i) {
    Json coords = Json::array();
    const BivarPoly& img = c.table()[i];
    for (std::size_t k = 0; k < c.algebra().dimension(); ++k) coords.push_back(to_string(img.coeff(k)));
    table[to_string(c.units().elements[i])] = std::move(coords);
  }
  j["table"] = std::move(table);
  return j;
}

Json to_json(const KummerWitness& w) {
  Json j;
  j["prime"] = to_string(w.prime);
  j["n"] = w.n;
  j["epsilon"] = w.epsilon;
  j["subgroup_order"] = w.subgroup.size();
  j["eta"] = to_string(w.eta);
  j["eta_power"] = to_string(w.eta_power);
  j["power_in_base"] = w.power_in_base;
  j["ratio"] = w.ratio ? Json(w.prime.field()->format(*w.ratio)) : Json(nullptr);
  j["ratio_is_unit"] = w.ratio_is_unit;
  j["ratio_is_nth_power"] = w.ratio_is_nth_power;
  j["exact_equality"] = w.exact_equality;
  j["minpoly_degree"] = w.minpoly_degree;
  return j;
}

Json to_json(const RnDegree& r) {
  return Json{{"degree", r.degree}, {"unit_count", r.unit_count}, {"enumerated", r.enumerated}};
}

Json to_json(const SplittingData& d) { return Json{{"e", d.e}, {"f", d.f}, {"g", d.g}, {"m", d.m}}; }

Json to_json(const KummerSplitting& k) {
  Json j = to_json(k.data);
  j["valuation"] = k.valuation;
  j["residue_degrees"] = k.residue_degrees;
  j["oracle_squarefree"] = k.oracle_squarefree;
  return j;
}

Json to_json(const GeometricReport& g) {
  Json j;
  j["prime"] = to_string(g.prime);
  j["m"] = g.m;
  j["extension"] = g.extension->describe();
  j["psi"] = to_string(g.psi);
  j["factors"] = Json::array();
  for (const auto& f : g.factors) j["factors"].push_back(Json{{"factor", to_string(f.factor)}, {"eisenstein", f.eisenstein}});
  j["degree"] = g.degree;
  j["preserved"] = g.preserved;
  return j;
}

Json to_json(const SplitTableRow& r) {
  Json j;
  j["Q"] = to_string(r.q);
  j["a"] = to_string(r.a);
  j["e"] = r.data.e;
  j["f"] = r.data.f;
  j["g"] = r.data.g;
  j["m"] = r.data.m;
  j["oracle_degrees"] = r.oracle ? Json(*r.oracle) : Json(nullptr);
  j["agree"] = optional_bool(r.agree);
  return j;
}

// ---- ultrakit ----

Json to_json(const u::Truncation& t) {
  Json j;
  j["N"] = t.n;
  j["tail_start"] = t.tail_start;
  j["mode"] = t.mode == u::TailMode::Strict ? "strict" : "density";
  j["theta"] = t.theta;
  return j;
}

Json to_json(const u::Hyperinteger& h) { return Json(h.v); }

Json to_json(const u::TailReport& r) {
  Json j;
  j["verdict"] = u::to_string(r.verdict);
  j["per_index"] = Json::array();
  for (const auto& e : r.per_index) {
    j["per_index"].push_back(Json{{"s", e.s}, {"value", optional_bool(e.value)}, {"detail", e.detail}});
  }
  j["unknown"] = r.unknown;
  j["violating"] = r.violating;
  return j;
}

Json to_json(const u::UnionMember& m) {
  Json j;
  j["verdict"] = u::to_string(m.verdict);
  j["part"] = m.part ? Json(*m.part) : Json(nullptr);
  j["densities"] = m.densities;
  return j;
}

Json to_json(const u::UltraFieldFamily& f) {
  Json j;
  j["kind"] = f.kind;
  j["depth"] = f.depth();
  j["truncation"] = to_json(f.trunc);
  if (f.depth() == 1) {
    j["icard"] = to_json(f.icard());
  } else {
    j["inner"] = array_of(f.inner);
  }
  return j;
}

Json to_json(const u::GuardResult& g) {
  return Json{{"compared", g.compared}, {"disagreements", g.disagreements}, {"disagreeing", g.disagreeing}};
}

Json to_json(const u::TransferReport& r) {
  Json j;
  j["verdict"] = u::to_string(r.verdict);
  j["per_index"] = Json::array();
  for (const auto& e : r.per_index) {
    Json row{{"s", e.s}, {"verdict", to_string(e.verdict)}, {"evidence", e.evidence}};
    row["bound_audit"] = e.bound_audit ? to_json(*e.bound_audit) : Json(nullptr);
    j["per_index"].push_back(std::move(row));
  }
  j["unknown"] = r.unknown;
  j["bound_audits_pass"] = r.bound_audits_pass;
  return j;
}

Json to_json(const u::GaloisDescriptor& d) {
  Json j;
  switch (d.kind) {
    case u::GaloisDescriptor::Kind::Trivial: j["kind"] = "trivial"; break;
    case u::GaloisDescriptor::Kind::Kummer: j["kind"] = "kummer"; break;
    case u::GaloisDescriptor::Kind::Cyclotomic: j["kind"] = "cyclotomic"; break;
  }
  j["order"] = d.order;
  j["cyclic"] = d.cyclic;
  j["abelian"] = d.abelian;
  j["action"] = d.action;
  if (d.radicand) j["radicand"] = to_string(*d.radicand);
  if (d.cyclotomic_modulus) j["modulus"] = to_string(*d.cyclotomic_modulus);
  return j;
}

Json to_json(const u::ShadowFamily& s) {
  Json j;
  j["mode"] = s.mode == u::SpecMode::IntegerSpec ? "integer" : "table";
  j["degree"] = s.degree;
  j["per_index"] = Json::array();
  for (const auto& e : s.entries) {
    Json row;
    row["s"] = e.s;
    row["q"] = s.base.field(e.s)->order();
    row["minpoly"] = to_string(e.minpoly);
    row["certificate"] = to_json(e.certificate);
    row["galois"] = e.galois ? to_json(*e.galois) : Json(nullptr);
    row["round_trip"] = e.round_trip;
    j["per_index"].push_back(std::move(row));
  }
  j["outside"] = s.outside;
  return j;
}

Json to_json(const u::ArtinSchreierReport& r) {
  Json j;
  j["degrees"] = to_json(r.degrees);
  j["per_index"] = Json::array();
  for (const auto& e : r.per_index) {
    j["per_index"].push_back(Json{{"s", e.s}, {"value", optional_bool(e.value)}, {"detail", e.detail}});
  }
  j["divisors"] = r.divisors;
  j["distinct"] = r.distinct;
  j["conclusion_drawn"] = r.conclusion_drawn;
  j["conclusion"] = r.conclusion;
  j["reasoning"] = r.reasoning;
  return j;
}

Json to_json(const u::TowerReport& r) {
  Json j;
  j["prime"] = r.prime;
  j["degree"] = r.degree;
  j["levels"] = Json::array();
  for (const auto& lv : r.levels) {
    Json l;
    l["n"] = lv.n;
    l["epsilon"] = lv.epsilon;
    l["tail_start"] = lv.trunc.tail_start;
    l["divides"] = u::to_string(lv.divides);
    l["shadow"] = format_int_bivar(lv.shadow_poly);
    l["audit"] = to_json(lv.audit_report);
    l["cross_checks"] = Json::array();
    for (const auto& cc : lv.cross_checks) {
      Json c{{"s", cc.s}, {"agree", cc.agree}, {"note", cc.note}};
      c["witness"] = cc.witness ? to_json(*cc.witness) : Json(nullptr);
      l["cross_checks"].push_back(std::move(c));
    }
    l["skipped"] = lv.skipped;
    l["agreement"] = lv.agreement;
    j["levels"].push_back(std::move(l));
  }
  return j;
}

Json to_json(const u::RamificationReport& r) {
  Json j;
  j["per_index"] = Json::array();
  for (const auto& e : r.per_index) {
    Json row{{"s", e.s}};
    row["data"] = e.data ? to_json(*e.data) : Json(nullptr);
    row["detail"] = e.detail;
    j["per_index"].push_back(std::move(row));
  }
  j["distinct_triples"] = array_of(r.distinct_triples);
  j["stabilization"] = to_json(r.stabilization);
  j["stabilized"] = r.stabilized ? to_json(*r.stabilized) : Json(nullptr);
  j["unramified"] = u::to_string(r.unramified);
  j["cases"] = r.cases;
  j["conclusions"] = r.conclusions;
  return j;
}

Json to_json(const u::MaeReport& r) {
  Json j;
  j["bound"] = r.bound;
  j["depth"] = r.depth;
  j["partial"] = r.partial;
  if (r.depth == 2) {
    j["nested"] = array_of(r.nested);
    return j;
  }
  j["per_index"] = Json::array();
  for (const auto& mi : r.per_index) {
    Json row;
    row["s"] = mi.s;
    row["q"] = mi.q;
    row["constant_degrees"] = mi.constant_degrees;
    row["carlitz_t_degrees"] = mi.carlitz_t_degrees;
    row["rn_degrees"] = mi.rn_degrees;
    Json mods = Json::array();
    for (const auto& [a, phi] : mi.all_moduli) mods.push_back(Json{{"a", a}, {"phi", phi}});
    row["moduli"] = std::move(mods);
    row["compositum_degree"] = mi.compositum_degree ? Json(*mi.compositum_degree) : Json(nullptr);
    row["skipped"] = mi.skipped;
    j["per_index"].push_back(std::move(row));
  }
  return j;
}

}  // namespace fflab::report
