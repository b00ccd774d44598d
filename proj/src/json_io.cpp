#include "lf/json_io.hpp"

#include <fstream>
#include <sstream>

namespace lf {
namespace {

std::string z_str(const mpz_class& v) { return v.get_str(); }

json rational_pair(const mpq_class& v) {
  json j;
  j["num"] = v.get_num().get_str();
  j["den"] = v.get_den().get_str();
  return j;
}

json exp1(int k) { return json::array({k}); }
json exp2(int i, int j) { return json::array({i, j}); }

template <class R, class CoeffFn>
json coeff_list1(const Series1<R>& f, CoeffFn per) {
  json out = json::array();
  for (int k = 0; k <= f.trunc(); ++k) {
    if (f.coeff(k).is_zero()) continue;
    json c = per(f.coeff(k));
    c["exp"] = exp1(k);
    out.push_back(std::move(c));
  }
  return out;
}

template <class R, class CoeffFn>
json coeff_list2(const Series2<R>& F, CoeffFn per) {
  json out = json::array();
  for (int d = 0; d <= F.trunc(); ++d)
    for (int j = 0; j <= d; ++j) {
      if (F.coeff(d - j, j).is_zero()) continue;
      json c = per(F.coeff(d - j, j));
      c["exp"] = exp2(d - j, j);
      out.push_back(std::move(c));
    }
  return out;
}

json rational_coeff(const LocalRational& v) { return rational_pair(v.value()); }

json number_field_coeff(const NumberFieldRational& v) {
  json coords = json::array();
  for (const auto& q : v.coords()) coords.push_back(rational_pair(q));
  json j;
  j["coords"] = coords;
  return j;
}

json residue_coeff(const ResidueElement& v) {
  json coords = json::array();
  for (const auto& z : v.coords()) coords.push_back(z_str(z));
  json j;
  j["coords"] = coords;
  j["precision"] = v.precision();
  return j;
}

long as_long(const json& j, const char* what) {
  if (!j.is_number_integer()) fail(errc::bad_input, std::string(what) + " must be an integer");
  return j.get<long>();
}

}  // namespace

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::missing_corpus, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) fail(errc::bad_input, "invalid JSON in " + path);
  return j;
}

FieldPtr field_from_json(const json& j) {
  if (!j.is_object()) fail(errc::bad_input, "field spec must be an object");
  if (!j.contains("p") || !j.contains("u_poly"))
    fail(errc::bad_input, "field spec needs p and u_poly");
  long p = as_long(j.at("p"), "p");
  std::vector<long> u;
  for (const auto& c : j.at("u_poly")) u.push_back(as_long(c, "u_poly entry"));
  int N = j.contains("precision") ? static_cast<int>(as_long(j.at("precision"), "precision")) : 16;
  std::vector<std::vector<mpz_class>> e_poly;
  if (j.contains("e_poly") && !j.at("e_poly").is_null()) {
    for (const auto& coeff : j.at("e_poly")) {
      std::vector<mpz_class> coords;
      for (const auto& c : coeff) {
        if (c.is_string())
          coords.emplace_back(c.get<std::string>());
        else
          coords.emplace_back(as_long(c, "e_poly coordinate"));
      }
      e_poly.push_back(std::move(coords));
    }
  }
  FieldPtr F = make_local_field(p, std::move(u), N, e_poly);
  if (j.contains("f") && as_long(j.at("f"), "f") != F->f)
    fail(errc::bad_input, "declared f does not match u_poly");
  if (j.contains("e") && as_long(j.at("e"), "e") != F->e)
    fail(errc::bad_input, "declared e does not match e_poly");
  return F;
}

json field_json(const FieldPtr& field) {
  json j;
  j["p"] = field->p;
  j["f"] = field->f;
  j["e"] = field->e;
  j["u_poly"] = field->u_poly;
  if (field->ramified()) {
    json ep = json::array();
    for (const auto& coeff : field->e_poly) {
      json coords = json::array();
      for (const auto& z : coeff) coords.push_back(z_str(z));
      ep.push_back(std::move(coords));
    }
    // stored coefficients are c_0..c_{e-1}; the serialized polynomial is the
    // full monic one, matching what field_from_json accepts
    json top = json::array();
    for (int i = 0; i < field->f; ++i) top.push_back(i == 0 ? "1" : "0");
    ep.push_back(std::move(top));
    j["e_poly"] = ep;
  } else {
    j["e_poly"] = nullptr;
  }
  j["precision"] = field->N;
  return j;
}

GroupPtr group_from_json(const json& j) {
  if (!j.is_object()) fail(errc::bad_input, "group spec must be an object");
  std::string name = j.contains("name") ? j.at("name").get<std::string>() : "G";
  if (j.contains("table")) {
    std::vector<std::vector<int>> table;
    for (const auto& row : j.at("table")) {
      std::vector<int> r;
      for (const auto& v : row) r.push_back(static_cast<int>(as_long(v, "table entry")));
      table.push_back(std::move(r));
    }
    if (j.contains("order") && as_long(j.at("order"), "order") != static_cast<long>(table.size()))
      fail(errc::bad_input, "declared order does not match the table");
    return group_from_table(name, table);
  }
  if (j.contains("generators")) {
    if (!j.contains("perm_degree")) fail(errc::bad_input, "generators need perm_degree");
    int degree = static_cast<int>(as_long(j.at("perm_degree"), "perm_degree"));
    std::vector<std::vector<int>> gens;
    for (const auto& g : j.at("generators")) {
      std::vector<int> perm;
      for (const auto& v : g) perm.push_back(static_cast<int>(as_long(v, "permutation image")));
      gens.push_back(std::move(perm));
    }
    return group_from_perms(name, degree, gens);
  }
  fail(errc::bad_input, "group spec needs a table or permutation generators");
}

json report_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["first_failure"] = r.first_failure ? json(*r.first_failure) : json(nullptr);
  j["precision_achieved"] = r.precision_achieved ? json(*r.precision_achieved) : json(nullptr);
  j["truncation"] = r.truncation;
  j["details"] = r.details;
  return j;
}

json classes_json(const TupleClassSet& s) {
  json classes = json::array();
  for (const auto& c : s.classes) {
    json e;
    e["rep"] = c.rep;
    e["size"] = c.size;
    classes.push_back(std::move(e));
  }
  json j;
  j["n"] = s.n;
  j["p"] = s.p;
  j["classes"] = classes;
  return j;
}

json decomposition_json(const EtaleDecomposition& d) {
  json points = json::array();
  for (const auto& pt : d.points) {
    json e;
    e["rep"] = pt.rep;
    e["degree"] = pt.degree;
    e["stabilizer_order"] = pt.stabilizer_order;
    points.push_back(std::move(e));
  }
  json j;
  j["field"] = field_json(d.field);
  j["group"] = d.group->name;
  j["level_r"] = d.level_r;
  j["acting_group_order"] = d.acting_group_order;
  j["refinement"] = d.refinement;
  j["points"] = points;
  j["total_classes"] = d.total_classes;
  return j;
}

json qmz_json(const QmodZ& v) {
  json j;
  j["num"] = v.num;
  j["den"] = v.den;
  return j;
}

Character character_from_json(const GroupPtr& G, const json& j) {
  if (!j.is_object() || !j.contains("generator_images"))
    fail(errc::bad_input, "character spec needs generator_images");
  std::vector<QmodZ> images;
  for (const auto& im : j.at("generator_images"))
    images.push_back(qmz(as_long(im.at("num"), "num"), as_long(im.at("den"), "den")));
  std::vector<int> gens;
  if (j.contains("generators")) {
    for (const auto& g : j.at("generators"))
      gens.push_back(static_cast<int>(as_long(g, "generator index")));
  } else {
    gens = G->generator_indices;
    if (gens.empty())
      fail(errc::bad_input, "group carries no generator list; give explicit generators");
  }
  return character_from_images(G, gens, images);
}

json series_json(const Series1<LocalRational>& f) {
  json j;
  j["mode"] = "rational";
  j["truncation"] = f.trunc();
  j["coeffs"] = coeff_list1(f, rational_coeff);
  return j;
}

json series_json(const Series2<LocalRational>& F) {
  json j;
  j["mode"] = "rational";
  j["truncation"] = F.trunc();
  j["coeffs"] = coeff_list2(F, rational_coeff);
  return j;
}

json series_json(const Series1<NumberFieldRational>& f) {
  json j;
  j["mode"] = "number_field";
  j["u_poly"] = f.proto().ctx()->u;
  j["truncation"] = f.trunc();
  j["coeffs"] = coeff_list1(f, number_field_coeff);
  return j;
}

json series_json(const Series2<NumberFieldRational>& F) {
  json j;
  j["mode"] = "number_field";
  j["u_poly"] = F.proto().ctx()->u;
  j["truncation"] = F.trunc();
  j["coeffs"] = coeff_list2(F, number_field_coeff);
  return j;
}

json series_json(const Series1<ResidueElement>& f) {
  json j;
  j["mode"] = "residue";
  j["field"] = field_json(f.proto().field());
  j["truncation"] = f.trunc();
  j["coeffs"] = coeff_list1(f, residue_coeff);
  return j;
}

json series_json(const Series2<ResidueElement>& F) {
  json j;
  j["mode"] = "residue";
  j["field"] = field_json(F.proto().field());
  j["truncation"] = F.trunc();
  j["coeffs"] = coeff_list2(F, residue_coeff);
  return j;
}

json coefficient_json(const LocalRational& v) { return rational_coeff(v); }
json coefficient_json(const NumberFieldRational& v) { return number_field_coeff(v); }
json coefficient_json(const ResidueElement& v) { return residue_coeff(v); }

}  // namespace lf
