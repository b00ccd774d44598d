#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "criteria.hpp"
#include "lf/fgl.hpp"
#include "lf/hkr.hpp"
#include "lf/json_io.hpp"
#include "lf/lubin_tate.hpp"

#ifndef LF_DEFAULT_CORPUS
#define LF_DEFAULT_CORPUS "corpus"
#endif

namespace {

using lf::json;

// every verb funnels through here: text or canonical JSON, stdout or a file
void emit(const std::string& format, const std::string& output, const json& body,
          const std::string& text) {
  std::string payload = format == "json" ? lf::dump_canonical(body) : text;
  if (output.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) lf::fail(lf::errc::bad_input, "cannot write " + output);
    out << payload;
  }
}

std::string report_line(const lf::CheckReport& r) {
  std::ostringstream os;
  os << r.check << ": " << (r.pass ? "pass" : "FAIL");
  if (!r.pass && r.first_failure) os << " at " << *r.first_failure;
  if (!r.details.empty()) os << " (" << r.details << ")";
  os << "\n";
  return os.str();
}

std::string options_line(const json& opts) {
  std::ostringstream os;
  os << "options:";
  for (auto it = opts.begin(); it != opts.end(); ++it) {
    os << " " << it.key() << "=";
    if (it->is_string())
      os << it->get<std::string>();
    else
      os << it->dump();
  }
  os << "\n";
  return os.str();
}

struct CommonOpts {
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--format", c.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", c.output, "write the report to this file instead of stdout");
}

// parses "2", "-1", "1/2"
mpq_class parse_rational(const std::string& s) {
  try {
    mpq_class v(s);
    v.canonicalize();
    return v;
  } catch (const std::invalid_argument&) {
    lf::fail(lf::errc::bad_input, "cannot parse rational: " + s);
  }
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) lf::fail(lf::errc::bad_input, "empty entry in list: " + s);
    out.push_back(std::stol(item));
  }
  return out;
}

int exit_for(bool pass) { return pass ? 0 : 1; }

// runs the verb body; a mathematical Error becomes a failing report with the
// options still echoed, operational errors propagate to main's handler
int guarded(const json& opts, const std::string& format, const std::string& output,
            const std::function<std::pair<json, bool>()>& body) {
  json out;
  out["options"] = opts;
  bool pass = false;
  std::string text = options_line(opts);
  try {
    auto [body_json, ok] = body();
    for (auto it = body_json.begin(); it != body_json.end(); ++it) out[it.key()] = *it;
    pass = ok;
    if (body_json.contains("text_rendering")) {
      text += body_json["text_rendering"].get<std::string>();
      out.erase("text_rendering");
    }
  } catch (const lf::Error& e) {
    if (!e.is_math()) {
      std::cerr << options_line(opts);
      throw;
    }
    json err;
    err["code"] = std::string(lf::errc_name(e.code()));
    err["message"] = e.what();
    out["error"] = err;
    out["pass"] = false;
    text += std::string("error: ") + e.what() + "\n";
    emit(format, output, out, text);
    return 1;
  }
  out["pass"] = pass;
  emit(format, output, out, text);
  return exit_for(pass);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"formal group laws and generalized character schemes for local fields"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- fgl-log ----
  {
    auto* cmd = app.add_subcommand("fgl-log", "Hazewinkel logarithm and its functional equation");
    auto p = std::make_shared<long>(2);
    auto n = std::make_shared<int>(1);
    auto degree = std::make_shared<int>(0);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--p", *p, "prime")->required();
    cmd->add_option("--n", *n, "height")->required();
    cmd->add_option("--degree", *degree, "truncation degree (default max(q^2+4, 20))");
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      long q = 1;
      for (int i = 0; i < *n; ++i) q *= *p;
      int D = *degree > 0 ? *degree : lf::default_truncation(q);
      json opts = {{"verb", "fgl-log"}, {"p", *p},         {"n", *n},
                   {"degree", D},       {"format", common->format}, {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        auto log = lf::hazewinkel_log(*p, *n, D);
        lf::CheckReport rep = lf::verify_functional_equation(log, *p, q, D);
        json body;
        body["logarithm"] = lf::series_json(log);
        body["functional_equation"] = lf::report_json(rep);
        body["text_rendering"] = report_line(rep);
        return std::make_pair(body, rep.pass);
      });
    });
  }

  // ---- fgl-verify ----
  {
    auto* cmd = app.add_subcommand("fgl-verify", "check the logarithm functional equation");
    auto p = std::make_shared<long>(2);
    auto n = std::make_shared<int>(1);
    auto degree = std::make_shared<int>(0);
    auto which = std::make_shared<std::string>("hazewinkel");
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--p", *p, "prime")->required();
    cmd->add_option("--n", *n, "height")->required();
    cmd->add_option("--degree", *degree, "check depth (default max(q^2+4, 20))");
    cmd->add_option("--log", *which, "hazewinkel, honda, or additive")
        ->check(CLI::IsMember({"hazewinkel", "honda", "additive"}))
        ->capture_default_str();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      long q = 1;
      for (int i = 0; i < *n; ++i) q *= *p;
      int D = *degree > 0 ? *degree : lf::default_truncation(q);
      json opts = {{"verb", "fgl-verify"}, {"p", *p},     {"n", *n},
                   {"degree", D},          {"log", *which}, {"format", common->format},
                   {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::Series1<lf::LocalRational> log =
            *which == "hazewinkel" ? lf::hazewinkel_log(*p, *n, D)
            : *which == "honda"    ? lf::honda_log(*p, *n, D)
                                   : lf::additive_log(*p, D);
        lf::CheckReport rep = lf::verify_functional_equation(log, *p, q, D);
        json body;
        body["functional_equation"] = lf::report_json(rep);
        std::ostringstream os;
        os << "functional equation: " << (rep.pass ? "pass" : "FAIL");
        if (!rep.pass && rep.first_failure) os << " at degree " << *rep.first_failure;
        os << "\n";
        body["text_rendering"] = os.str();
        return std::make_pair(body, rep.pass);
      });
    });
  }

  // ---- fgl-law ----
  {
    auto* cmd = app.add_subcommand("fgl-law", "Hazewinkel formal group law with axiom checks");
    auto p = std::make_shared<long>(2);
    auto n = std::make_shared<int>(1);
    auto degree = std::make_shared<int>(0);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--p", *p, "prime")->required();
    cmd->add_option("--n", *n, "height")->required();
    cmd->add_option("--degree", *degree, "truncation degree (default max(q^2+4, 20))");
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      long q = 1;
      for (int i = 0; i < *n; ++i) q *= *p;
      int D = *degree > 0 ? *degree : lf::default_truncation(q);
      json opts = {{"verb", "fgl-law"}, {"p", *p},         {"n", *n},
                   {"degree", D},       {"format", common->format}, {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        auto F = lf::hazewinkel_law(*p, *n, D);
        lf::CheckReport axioms = lf::verify_law_axioms(F);
        lf::CheckReport pcor = lf::verify_p_corollary(F);
        auto ig = lf::integral_g(*F.logarithm, *p);
        json body;
        body["law"] = lf::fgl_json(F);
        body["axioms"] = lf::report_json(axioms);
        body["p_series_corollary"] = lf::report_json(pcor);
        body["g_integrality"] = lf::report_json(ig.report);
        body["text_rendering"] =
            report_line(axioms) + report_line(pcor) + report_line(ig.report);
        return std::make_pair(body, axioms.pass && pcor.pass && ig.report.pass);
      });
    });
  }

  // ---- fgl-endo ----
  {
    auto* cmd = app.add_subcommand("fgl-endo", "endomorphism [a] and the ring laws");
    auto p = std::make_shared<long>(2);
    auto n = std::make_shared<int>(1);
    auto degree = std::make_shared<int>(0);
    auto a_str = std::make_shared<std::string>("");
    auto b_str = std::make_shared<std::string>("");
    auto u_poly = std::make_shared<std::string>("");
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--p", *p, "prime")->required();
    cmd->add_option("--n", *n, "height")->required();
    cmd->add_option("--degree", *degree, "truncation degree (default max(q^2+4, 20))");
    cmd->add_option("--a", *a_str, "parameter: integer, num/den, or x")->required();
    cmd->add_option("--b", *b_str, "second parameter for the ring-law check");
    cmd->add_option("--u-poly", *u_poly,
                    "ascending comma list for number-field mode (default for n=2)");
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      long q = 1;
      for (int i = 0; i < *n; ++i) q *= *p;
      int D = *degree > 0 ? *degree : lf::default_truncation(q);
      bool nf_mode = *a_str == "x" || *b_str == "x" || !u_poly->empty();
      std::vector<long> u;
      if (nf_mode) {
        if (!u_poly->empty())
          u = parse_long_list(*u_poly);
        else if (*p == 2 && *n == 2)
          u = {1, 1, 1};
        else if (*p == 3 && *n == 2)
          u = {1, 0, 1};
        else
          lf::fail(lf::errc::bad_input, "number-field mode needs --u-poly for this (p,n)");
      }
      json opts = {{"verb", "fgl-endo"}, {"p", *p},
                   {"n", *n},            {"degree", D},
                   {"a", *a_str},        {"b", *b_str},
                   {"u_poly", u},        {"format", common->format},
                   {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        json body;
        bool pass = true;
        std::string text;
        if (nf_mode) {
          auto ctx = lf::make_number_field_ctx(*p, u);
          auto proto = lf::NumberFieldRational::zero(ctx);
          auto F = lf::hazewinkel_law_in(proto, *p, *n, D);
          auto parse_nf = [&](const std::string& s) {
            return s == "x" ? lf::NumberFieldRational::gen(ctx)
                            : lf::NumberFieldRational::from_rational(ctx, parse_rational(s));
          };
          lf::NumberFieldRational a = parse_nf(*a_str);
          body["endomorphism"] = lf::series_json(lf::endomorphism(F, a));
          lf::CheckReport rep = b_str->empty() ? lf::verify_endomorphism(F, a)
                                               : lf::verify_ring_hom(F, a, parse_nf(*b_str));
          body["ring_laws"] = lf::report_json(rep);
          pass = rep.pass;
          text = report_line(rep);
        } else {
          auto F = lf::hazewinkel_law(*p, *n, D);
          auto parse_lr = [&](const std::string& s) {
            return F.law.proto().make_rational(parse_rational(s));
          };
          lf::LocalRational a = parse_lr(*a_str);
          body["endomorphism"] = lf::series_json(lf::endomorphism(F, a));
          lf::CheckReport rep = b_str->empty() ? lf::verify_endomorphism(F, a)
                                               : lf::verify_ring_hom(F, a, parse_lr(*b_str));
          body["ring_laws"] = lf::report_json(rep);
          pass = rep.pass;
          text = report_line(rep);
        }
        body["text_rendering"] = text;
        return std::make_pair(body, pass);
      });
    });
  }

  // ---- fgl-araki ----
  {
    auto* cmd = app.add_subcommand("fgl-araki", "p-typical coordinates of a law");
    auto p = std::make_shared<long>(2);
    auto n = std::make_shared<int>(1);
    auto degree = std::make_shared<int>(0);
    auto kmax = std::make_shared<int>(0);
    auto which = std::make_shared<std::string>("hazewinkel");
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--p", *p, "prime")->required();
    cmd->add_option("--n", *n, "height")->required();
    cmd->add_option("--degree", *degree, "truncation degree (default max(q^2+4, 20))");
    cmd->add_option("--kmax", *kmax, "solve v_0..v_kmax (default n+1)");
    cmd->add_option("--law", *which, "hazewinkel or multiplicative")
        ->check(CLI::IsMember({"hazewinkel", "multiplicative"}))
        ->capture_default_str();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      long q = 1;
      for (int i = 0; i < *n; ++i) q *= *p;
      int D = *degree > 0 ? *degree : lf::default_truncation(q);
      int K = *kmax > 0 ? *kmax : *n + 1;
      json opts = {{"verb", "fgl-araki"}, {"p", *p},     {"n", *n},
                   {"degree", D},         {"kmax", K},   {"law", *which},
                   {"format", common->format},   {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        auto F = *which == "hazewinkel" ? lf::hazewinkel_law(*p, *n, D)
                                        : lf::multiplicative_law(*p, D);
        auto ar = lf::ptypical_coordinates(F, K);
        json body;
        body["araki"] = lf::araki_json(ar);
        std::ostringstream os;
        os << "v =";
        for (const auto& v : ar.values) os << " " << v.to_string();
        os << " (matched through degree " << ar.matched_degree << ")\n";
        body["text_rendering"] = os.str();
        return std::make_pair(body, true);
      });
    });
  }

  // ---- lt-construct ----
  {
    auto* cmd = app.add_subcommand("lt-construct", "Lubin-Tate law for a chosen uniformizer series");
    auto field_file = std::make_shared<std::string>("");
    auto uniformizer = std::make_shared<std::string>("standard");
    auto degree = std::make_shared<int>(16);
    auto precision = std::make_shared<int>(0);
    auto endos = std::make_shared<std::string>("");
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--field", *field_file, "field JSON file")->required();
    cmd->add_option("--uniformizer", *uniformizer, "standard (pi X + X^q) or cyclotomic ((1+X)^p - 1)")
        ->check(CLI::IsMember({"standard", "cyclotomic"}))
        ->capture_default_str();
    cmd->add_option("--degree", *degree, "truncation degree")->capture_default_str();
    cmd->add_option("--precision", *precision, "override the field file's precision");
    cmd->add_option("--endo", *endos, "comma list of integer parameters a for [a]");
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      lf::FieldPtr F = lf::field_from_json(lf::load_json_file(*field_file));
      if (*precision > 0) F = lf::field_with_precision(F, *precision);
      json opts = {{"verb", "lt-construct"},   {"field", *field_file},
                   {"uniformizer", *uniformizer}, {"degree", *degree},
                   {"precision", F->N},        {"endo", *endos},
                   {"format", common->format},        {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::ExactSeries f_coeffs;
        if (*uniformizer == "cyclotomic") {
          if (F->f != 1 || F->e != 1)
            lf::fail(lf::errc::bad_input, "cyclotomic uniformizer series needs Q_p itself");
          f_coeffs = lf::lt_cyclotomic_f(F->p);
        } else {
          f_coeffs = lf::lt_standard_f(F);
        }
        std::vector<std::pair<std::string, lf::ExactCoords>> endo_params;
        if (!endos->empty())
          for (long a : parse_long_list(*endos))
            endo_params.push_back({std::to_string(a), lf::ExactCoords{mpz_class(a)}});
        lf::LubinTateResult res = lf::lubin_tate_law(F, f_coeffs, *degree, endo_params);
        json body;
        body["law"] = lf::fgl_json(res.F);
        body["f_series"] = lf::series_json(res.f);
        body["defining_check"] = lf::report_json(res.defining_check);
        body["pi_check"] = lf::report_json(res.pi_check);
        body["precision_achieved"] = res.precision_achieved;
        json ej = json::object();
        for (const auto& [name, series] : res.endos) ej[name] = lf::series_json(series);
        body["endomorphisms"] = ej;
        body["text_rendering"] = report_line(res.defining_check) + report_line(res.pi_check) +
                                 "precision achieved: " +
                                 std::to_string(res.precision_achieved) + "\n";
        return std::make_pair(body, res.defining_check.pass && res.pi_check.pass);
      });
    });
  }

  // ---- genus ----
  {
    auto* cmd = app.add_subcommand("genus", "genus of CP^m under the height-n law");
    auto p = std::make_shared<long>(2);
    auto n = std::make_shared<int>(1);
    auto m = std::make_shared<long>(1);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--p", *p, "prime")->required();
    cmd->add_option("--n", *n, "height")->required();
    cmd->add_option("--m", *m, "complex dimension of CP^m")->required();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      json opts = {{"verb", "genus"}, {"p", *p},         {"n", *n},
                   {"m", *m},         {"format", common->format}, {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::LocalRational v = lf::genus_value(*p, *n, *m);
        json body;
        body["value"] = lf::coefficient_json(v);
        body["p_integral"] = v.valuation() >= 0;
        body["text_rendering"] = v.to_string() + "\n";
        return std::make_pair(body, true);
      });
    });
  }

  // ---- torsion ----
  {
    auto* cmd = app.add_subcommand("torsion", "order of the p^r-torsion of the height-n law");
    auto p = std::make_shared<long>(2);
    auto n = std::make_shared<int>(1);
    auto r = std::make_shared<int>(1);
    auto degree = std::make_shared<int>(0);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--p", *p, "prime")->required();
    cmd->add_option("--n", *n, "height")->required();
    cmd->add_option("--r", *r, "torsion level")->capture_default_str();
    cmd->add_option("--degree", *degree, "truncation (default: enough for p^{rn})");
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      long q = 1;
      for (int i = 0; i < *n; ++i) q *= *p;
      long need = lf::expected_torsion(*p, *n, *r);
      int D = *degree > 0 ? *degree
                          : std::max(lf::default_truncation(q), static_cast<int>(need) + 1);
      json opts = {{"verb", "torsion"}, {"p", *p},     {"n", *n},
                   {"r", *r},           {"degree", D}, {"format", common->format},
                   {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        auto F = lf::hazewinkel_law(*p, *n, D);
        long count = lf::torsion_order(F, *r);
        json body;
        body["order"] = count;
        body["expected"] = need;
        body["text_rendering"] = std::to_string(count) + "\n";
        return std::make_pair(body, count == need);
      });
    });
  }

  // ---- group-info ----
  {
    auto* cmd = app.add_subcommand("group-info", "validate a group file and describe it");
    auto group_file = std::make_shared<std::string>("");
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--group", *group_file, "group JSON file")->required();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      json opts = {{"verb", "group-info"},
                   {"group", *group_file},
                   {"format", common->format},
                   {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::GroupPtr G = lf::group_from_json(lf::load_json_file(*group_file));
        lf::ConjugacyClasses cc = lf::conjugacy_classes(*G);
        json body;
        body["name"] = G->name;
        body["order"] = G->order;
        body["abelian"] = lf::is_abelian(*G);
        body["conjugacy_classes"] = static_cast<long>(cc.classes.size());
        json orders = json::object();
        for (int g = 0; g < G->order; ++g) {
          std::string key = std::to_string(G->element_order[static_cast<size_t>(g)]);
          orders[key] = orders.contains(key) ? orders[key].get<long>() + 1 : 1;
        }
        body["element_order_histogram"] = orders;
        std::ostringstream os;
        os << G->name << ": order " << G->order << ", " << cc.classes.size()
           << " conjugacy classes, " << (lf::is_abelian(*G) ? "abelian" : "nonabelian") << "\n";
        body["text_rendering"] = os.str();
        return std::make_pair(body, true);
      });
    });
  }

  // ---- hkr-classes ----
  {
    auto* cmd = app.add_subcommand("hkr-classes", "commuting p-power tuples up to conjugacy");
    auto field_file = std::make_shared<std::string>("");
    auto group_file = std::make_shared<std::string>("");
    auto budget = std::make_shared<long>(lf::default_tuple_budget);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--field", *field_file, "field JSON file")->required();
    cmd->add_option("--group", *group_file, "group JSON file")->required();
    cmd->add_option("--budget", *budget, "tuple enumeration budget")->capture_default_str();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      json opts = {{"verb", "hkr-classes"}, {"field", *field_file},
                   {"group", *group_file},  {"budget", *budget},
                   {"format", common->format},     {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::FieldPtr F = lf::field_from_json(lf::load_json_file(*field_file));
        lf::GroupPtr G = lf::group_from_json(lf::load_json_file(*group_file));
        lf::TupleClassSet S = lf::hom_classes(F, G, *budget);
        json body;
        body["classes"] = lf::classes_json(S);
        std::ostringstream os;
        os << S.classes.size() << " classes of " << S.total_tuples << " commuting "
           << S.n << "-tuples\n";
        body["text_rendering"] = os.str();
        return std::make_pair(body, true);
      });
    });
  }

  // ---- hkr-scheme ----
  {
    auto* cmd = app.add_subcommand("hkr-scheme", "etale decomposition of the character scheme");
    auto field_file = std::make_shared<std::string>("");
    auto group_file = std::make_shared<std::string>("");
    auto refine = std::make_shared<std::string>("none");
    auto budget = std::make_shared<long>(lf::default_tuple_budget);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--field", *field_file, "field JSON file")->required();
    cmd->add_option("--group", *group_file, "group JSON file")->required();
    cmd->add_option("--refine", *refine, "none or frobenius")
        ->check(CLI::IsMember({"none", "frobenius"}))
        ->capture_default_str();
    cmd->add_option("--budget", *budget, "tuple enumeration budget")->capture_default_str();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      json opts = {{"verb", "hkr-scheme"}, {"field", *field_file},
                   {"group", *group_file}, {"refine", *refine},
                   {"budget", *budget},    {"format", common->format},
                   {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::FieldPtr F = lf::field_from_json(lf::load_json_file(*field_file));
        lf::GroupPtr G = lf::group_from_json(lf::load_json_file(*group_file));
        lf::EtaleDecomposition d = *refine == "frobenius" ? lf::frobenius_orbits(F, G, *budget)
                                                          : lf::unit_orbits(F, G, *budget);
        json body;
        body["decomposition"] = lf::decomposition_json(d);
        std::ostringstream os;
        os << d.points.size() << " closed points over " << d.total_classes
           << " classes (level r=" << d.level_r << ", acting order " << d.acting_group_order
           << ", refinement " << d.refinement << ")\n";
        for (const auto& pt : d.points)
          os << "  degree " << pt.degree << ", stabilizer order " << pt.stabilizer_order << "\n";
        body["text_rendering"] = os.str();
        return std::make_pair(body, true);
      });
    });
  }

  // ---- hkr-rank ----
  {
    auto* cmd = app.add_subcommand("hkr-rank", "number of conjugacy classes of commuting tuples");
    auto field_file = std::make_shared<std::string>("");
    auto group_file = std::make_shared<std::string>("");
    auto budget = std::make_shared<long>(lf::default_tuple_budget);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--field", *field_file, "field JSON file")->required();
    cmd->add_option("--group", *group_file, "group JSON file")->required();
    cmd->add_option("--budget", *budget, "tuple enumeration budget")->capture_default_str();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      json opts = {{"verb", "hkr-rank"}, {"field", *field_file},
                   {"group", *group_file}, {"budget", *budget},
                   {"format", common->format},   {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::FieldPtr F = lf::field_from_json(lf::load_json_file(*field_file));
        lf::GroupPtr G = lf::group_from_json(lf::load_json_file(*group_file));
        long r = lf::rank(F, G, *budget);
        json body;
        body["rank"] = r;
        body["text_rendering"] = std::to_string(r) + "\n";
        return std::make_pair(body, true);
      });
    });
  }

  // ---- hkr-check ----
  {
    auto* cmd = app.add_subcommand("hkr-check", "product / cyclic / equivariance identities");
    auto what = std::make_shared<std::string>("");
    auto field_file = std::make_shared<std::string>("");
    auto group_file = std::make_shared<std::string>("");
    auto group2_file = std::make_shared<std::string>("");
    auto nu = std::make_shared<int>(1);
    auto images = std::make_shared<std::string>("");
    auto budget = std::make_shared<long>(lf::default_tuple_budget);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--check", *what, "product, cyclic, or equivariance")
        ->check(CLI::IsMember({"product", "cyclic", "equivariance"}))
        ->required();
    cmd->add_option("--field", *field_file, "field JSON file")->required();
    cmd->add_option("--group", *group_file, "group JSON file");
    cmd->add_option("--group2", *group2_file, "second group file (product check)");
    cmd->add_option("--nu", *nu, "torsion level (cyclic check)")->capture_default_str();
    cmd->add_option("--images", *images,
                    "comma list of generator images a/b (single-character equivariance)");
    cmd->add_option("--budget", *budget, "tuple enumeration budget")->capture_default_str();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      json opts = {{"verb", "hkr-check"},   {"check", *what},
                   {"field", *field_file},  {"group", *group_file},
                   {"group2", *group2_file}, {"nu", *nu},
                   {"images", *images},     {"budget", *budget},
                   {"format", common->format},     {"output", common->output}};
      exit_code = guarded(opts, common->format, common->output, [&]() {
        lf::FieldPtr F = lf::field_from_json(lf::load_json_file(*field_file));
        std::vector<lf::CheckReport> reports;
        if (*what == "product") {
          if (group_file->empty() || group2_file->empty())
            lf::fail(lf::errc::bad_input, "product check needs --group and --group2");
          reports.push_back(lf::product_check(
              F, lf::group_from_json(lf::load_json_file(*group_file)),
              lf::group_from_json(lf::load_json_file(*group2_file)), *budget));
        } else if (*what == "cyclic") {
          reports.push_back(lf::cyclic_hom_count(F, *nu, *budget).report);
        } else {
          if (group_file->empty())
            lf::fail(lf::errc::bad_input, "equivariance check needs --group");
          lf::GroupPtr G = lf::group_from_json(lf::load_json_file(*group_file));
          if (images->empty()) {
            for (const auto& lam : lf::all_characters(G))
              reports.push_back(lf::equivariance_check(F, lam, *budget));
          } else {
            std::vector<lf::QmodZ> ims;
            std::stringstream ss(*images);
            std::string item;
            while (std::getline(ss, item, ',')) {
              auto slash = item.find('/');
              if (slash == std::string::npos)
                ims.push_back(lf::qmz(std::stol(item), 1));
              else
                ims.push_back(lf::qmz(std::stol(item.substr(0, slash)),
                                      std::stol(item.substr(slash + 1))));
            }
            lf::Character lam = lf::character_from_images(G, G->generator_indices, ims);
            reports.push_back(lf::equivariance_check(F, lam, *budget));
          }
        }
        bool pass = true;
        json rj = json::array();
        std::string text;
        for (const auto& r : reports) {
          pass = pass && r.pass;
          rj.push_back(lf::report_json(r));
          text += report_line(r);
        }
        json body;
        body["reports"] = rj;
        body["text_rendering"] = text;
        return std::make_pair(body, pass);
      });
    });
  }

  // ---- suite ----
  {
    auto* cmd = app.add_subcommand("suite", "run every registered acceptance check");
    auto corpus = std::make_shared<std::string>(LF_DEFAULT_CORPUS);
    auto only = std::make_shared<std::string>("");
    auto budget_seconds = std::make_shared<double>(600.0);
    auto common = std::make_shared<CommonOpts>();
    cmd->add_option("--corpus", *corpus, "corpus directory")->capture_default_str();
    cmd->add_option("--only", *only, "run only checks whose tag or name contains this");
    cmd->add_option("--budget-seconds", *budget_seconds, "total runtime bound")
        ->capture_default_str();
    add_common(cmd, *common);
    cmd->callback([=, &exit_code]() {
      json opts = {{"verb", "suite"},
                   {"corpus", *corpus},
                   {"only", *only},
                   {"budget_seconds", *budget_seconds},
                   {"format", common->format},
                   {"output", common->output}};
      std::vector<const lf::Criterion*> selected;
      for (const auto& c : lf::acceptance_criteria())
        if (only->empty() || c.tag.find(*only) != std::string::npos ||
            c.name.find(*only) != std::string::npos)
          selected.push_back(&c);
      if (selected.empty())
        lf::fail(lf::errc::bad_input, "--only matched no registered checks");

      auto t0 = std::chrono::steady_clock::now();
      bool all_pass = true;
      bool budget_hit = false;
      json reports = json::array();
      std::ostringstream text;
      text << options_line(opts);
      for (const auto* c : selected) {
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > *budget_seconds) {
          budget_hit = true;
          break;
        }
        lf::CheckReport r = lf::run_criterion(*c, *corpus);
        all_pass = all_pass && r.pass;
        json rj = lf::report_json(r);
        rj["number"] = c->number;
        rj["tag"] = c->tag;
        reports.push_back(rj);
        char line[160];
        std::snprintf(line, sizeof line, "%2d  %-24s %-7s %s\n", c->number, r.check.c_str(),
                      c->tag.c_str(), r.pass ? "pass" : "FAIL");
        text << line;
        if (!r.pass) text << "      " << r.details << "\n";
      }
      if (budget_hit) {
        std::cerr << "suite: runtime budget exceeded, " << reports.size() << "/"
                  << selected.size() << " checks ran\n";
        exit_code = 2;
        return;
      }
      text << "suite: " << (all_pass ? "all checks passed" : "FAILURES PRESENT") << "\n";
      json out;
      out["options"] = opts;
      out["reports"] = reports;
      out["pass"] = all_pass;
      emit(common->format, common->output, out, text.str());
      exit_code = exit_for(all_pass);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const lf::Error& e) {
    std::cerr << e.what() << "\n";
    return e.is_math() ? 1 : 2;
  }
  return exit_code;
}
