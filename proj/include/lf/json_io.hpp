#pragma once

#include <string>

#include <json.hpp>

#include "lf/fgl.hpp"
#include "lf/finite_group.hpp"
#include "lf/hkr.hpp"
#include "lf/local_field.hpp"
#include "lf/lubin_tate.hpp"
#include "lf/number_field.hpp"
#include "lf/rational.hpp"
#include "lf/report.hpp"
#include "lf/series.hpp"

namespace lf {

// nlohmann's default object is backed by std::map, so keys serialize sorted;
// together with decimal-string big integers that makes every dump
// byte-deterministic for fixed inputs
using json = nlohmann::json;

std::string dump_canonical(const json& j);  // two-space indent, trailing newline

json load_json_file(const std::string& path);  // missing file -> MissingCorpus

// {"p":2,"f":2,"u_poly":[1,1,1],"e":1,"e_poly":null,"precision":16};
// e_poly, when present, lists the Eisenstein polynomial's coefficients
// low-to-high, each as coordinates over the unramified subfield
FieldPtr field_from_json(const json& j);
json field_json(const FieldPtr& field);

// {"name":"S3","perm_degree":3,"generators":[[1,0,2],[1,2,0]]}
// or {"name":"Q8","order":8,"table":[[...]]}
GroupPtr group_from_json(const json& j);

json report_json(const CheckReport& r);
json classes_json(const TupleClassSet& s);
json decomposition_json(const EtaleDecomposition& d);
json qmz_json(const QmodZ& v);

// {"generator_images":[{"num":1,"den":2}]}, images listed against the
// group's stored generators (optionally overridden by "generators":[idx,...])
Character character_from_json(const GroupPtr& G, const json& j);

json series_json(const Series1<LocalRational>& f);
json series_json(const Series2<LocalRational>& F);
json series_json(const Series1<NumberFieldRational>& f);
json series_json(const Series2<NumberFieldRational>& F);
json series_json(const Series1<ResidueElement>& f);
json series_json(const Series2<ResidueElement>& F);

// single-coefficient serializations used by araki_json and the CLI
json coefficient_json(const LocalRational& v);
json coefficient_json(const NumberFieldRational& v);
json coefficient_json(const ResidueElement& v);

template <class R>
json fgl_json(const FormalGroupLaw<R>& F) {
  json j;
  j["provenance"] = F.provenance;
  j["p"] = F.p;
  j["n"] = F.height;
  j["law"] = series_json(F.law);
  j["logarithm"] = F.logarithm ? series_json(*F.logarithm) : json(nullptr);
  j["p_series"] = series_json(F.p_series);
  return j;
}

template <class R>
json araki_json(const PTypicalCoordinates<R>& a) {
  json vals = json::array();
  for (const auto& v : a.values) vals.push_back(coefficient_json(v));
  json j;
  j["values"] = vals;
  j["convention"] = a.convention;
  j["matched_degree"] = a.matched_degree;
  j["residual_degree"] = a.residual_degree;
  return j;
}

}  // namespace lf
