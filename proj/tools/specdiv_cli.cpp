// Command-line front end: cusp classification, invariant and relation
// computations, special boundary divisors, eta identities. All output
// is JSON on stdout; errors are one-line JSON on stderr.
//
// Exit codes: 0 success, 2 invalid parameters or malformed input,
// 3 size guard exceeded, 4 internal invariant violation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "specdiv/divisors.hpp"
#include "specdiv/errors.hpp"
#include "specdiv/invariants.hpp"
#include "specdiv/json_io.hpp"
#include "specdiv/qeta.hpp"

namespace {

using specdiv::Json;

Json parse_json(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw specdiv::InvalidArgument(std::string(what) + ": malformed JSON");
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw specdiv::InvalidArgument("cannot open file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_json(text, path.c_str());
}

specdiv::FqmSubgroup subgroup_arg(long N, long Nprime,
                                  const std::string& text) {
  Json j = parse_json(text, "--H");
  if (!j.contains("N")) j["N"] = N;
  if (!j.contains("Nprime")) j["Nprime"] = Nprime;
  specdiv::FqmSubgroup H = specdiv::subgroup_from_json(j);
  if (H.form().N() != N || H.form().Nprime() != Nprime) {
    throw specdiv::InvalidArgument("--H: form does not match --N/--Nprime");
  }
  return H;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact boundary-divisor and eta-product computations"};
  app.require_subcommand(1);
  long seed = 0;
  app.add_option("--seed", seed,
                 "Fixes randomized test-support sampling (deterministic "
                 "commands ignore it)");

  long N = 1, Nprime = 1;
  auto add_form = [&](CLI::App* cmd) {
    cmd->add_option("--N", N, "Level N")->required();
    cmd->add_option("--Nprime", Nprime, "Level N' (divides N)")->required();
  };

  // cusps
  auto* cusps = app.add_subcommand("cusps", "Cusp classes and types");
  add_form(cusps);
  bool opt_classes = false, opt_types = false, opt_count = false;
  cusps->add_flag("--classes", opt_classes, "List cusp classes");
  cusps->add_flag("--types", opt_types, "List types with witnesses");
  cusps->add_flag("--count", opt_count, "Counts only");

  // types
  auto* types_cmd = app.add_subcommand("types", "Count the types");
  add_form(types_cmd);

  // invariants
  auto* invariants = app.add_subcommand("invariants", "Weil invariants");
  add_form(invariants);
  bool opt_dim = false, opt_span = false, opt_relations = false;
  invariants->add_flag("--dim", opt_dim, "Invariant space dimension");
  invariants->add_flag("--span", opt_span, "Type span dimension");
  invariants->add_flag("--relations", opt_relations, "Relation kernel");

  // relations
  auto* relations = app.add_subcommand(
      "relations", "Readings of the prime-power type relation");
  long rel_p = 2;
  int rel_r = 1, rel_rp = 1;
  relations->add_option("--p", rel_p, "Prime")->required();
  relations->add_option("--r", rel_r, "Exponent of N")->required();
  relations->add_option("--rprime", rel_rp, "Exponent of N'")->required();

  // zdiv
  auto* zdiv = app.add_subcommand("zdiv", "Special divisor Z(H)");
  add_form(zdiv);
  std::string h_json;
  zdiv->add_option("--H", h_json, "Subgroup JSON {generators:[[w,x,y,z],..]}")
      ->required();

  // is-special
  auto* special = app.add_subcommand("is-special", "Specialness certificate");
  add_form(special);
  std::string divisor_file;
  special->add_option("--file", divisor_file, "Divisor JSON file")->required();

  // weyl
  auto* weyl = app.add_subcommand("weyl", "Weyl vector components");
  add_form(weyl);
  std::string weyl_h;
  int star = 1;
  long label_a = 1, label_c = 0;
  weyl->add_option("--H", weyl_h, "Subgroup JSON")->required();
  weyl->add_option("--star", star, "Boundary star (1 or 2)")->required();
  weyl->add_option("--a", label_a, "Cusp numerator")->required();
  weyl->add_option("--c", label_c, "Cusp denominator")->required();

  // eta identity | eta psi
  auto* eta = app.add_subcommand("eta", "Eta product expansions");
  eta->require_subcommand(1);
  auto* eta_id = eta->add_subcommand("identity", "Unit-shift eta identity");
  long eta_p = 2, eta_terms = 50;
  int eta_r = 1;
  eta_id->add_option("--p", eta_p, "Prime")->required();
  eta_id->add_option("--r", eta_r, "Exponent")->required();
  eta_id->add_option("--terms", eta_terms, "Comparison depth");
  auto* eta_psi = eta->add_subcommand("psi", "Borcherds product eta factors");
  add_form(eta_psi);
  int psi_star = 1;
  long psi_a = 1, psi_c = 0, psi_terms = 20;
  eta_psi->add_option("--star", psi_star, "Star (1 or 2)")->required();
  eta_psi->add_option("--a", psi_a, "Cusp numerator")->required();
  eta_psi->add_option("--c", psi_c, "Cusp denominator")->required();
  eta_psi->add_option("--terms", psi_terms, "Truncation order");

  // cross-validate
  auto* cross = app.add_subcommand(
      "cross-validate", "Boundary orders against intersection counts");
  add_form(cross);
  std::string cross_h;
  long cross_terms = 20;
  cross->add_option("--H", cross_h, "Type subgroup JSON")->required();
  cross->add_option("--terms", cross_terms, "Truncation order");

  try {
    app.parse(argc, argv);

    if (*cusps) {
      specdiv::DiscriminantForm form(N, Nprime);
      bool all = !opt_classes && !opt_types && !opt_count;
      Json out = Json::object();
      auto type_list = specdiv::enumerate_types(form);
      if (opt_count || all) {
        out["type_count"] = type_list.size();
        out["formula_count"] = specdiv::types_count_formula(N, Nprime);
      }
      if (opt_types || all) {
        Json arr = Json::array();
        for (const auto& tw : type_list) {
          Json entry{{"generators",
                      specdiv::subgroup_to_json(tw.type)["generators"]}};
          entry["witness"] =
              tw.realized ? specdiv::label_to_json(tw.witness) : Json(nullptr);
          arr.push_back(entry);
        }
        out["types"] = arr;
      }
      if (opt_classes || all) {
        Json arr = Json::array();
        for (const auto& cls : specdiv::cusp_classes(form)) {
          Json members = Json::array();
          for (const auto& m : cls.members) {
            members.push_back(specdiv::label_to_json(m));
          }
          arr.push_back(
              Json{{"representative", specdiv::label_to_json(cls.representative)},
                   {"members", members},
                   {"type",
                    specdiv::subgroup_to_json(cls.type)["generators"]}});
        }
        out["classes"] = arr;
      }
      emit(out);
    } else if (*types_cmd) {
      specdiv::DiscriminantForm form(N, Nprime);
      emit(Json{{"count", specdiv::enumerate_types(form).size()}});
    } else if (*invariants) {
      specdiv::DiscriminantForm form(N, Nprime);
      bool all = !opt_dim && !opt_span && !opt_relations;
      Json out = Json::object();
      if (opt_dim || all) {
        out["invariant_dim"] = specdiv::invariant_space_dim(form);
      }
      if (opt_span || opt_relations || all) {
        specdiv::TypesSpan span = specdiv::types_span(form);
        out["span_dim"] = span.dimension;
        if (opt_relations || all) {
          Json kernel = Json::array();
          for (const auto& vec : span.relation_kernel) {
            Json row = Json::array();
            for (const auto& v : vec) row.push_back(specdiv::rat_str(v));
            kernel.push_back(row);
          }
          out["relation_kernel"] = kernel;
        }
      }
      emit(out);
    } else if (*relations) {
      specdiv::RelationReadings rr =
          specdiv::relation_readings(rel_p, rel_r, rel_rp);
      Json lit = Json::array(), non = Json::array();
      for (const auto& v : rr.literal) lit.push_back(specdiv::rat_str(v));
      for (const auto& v : rr.non_overlapping) {
        non.push_back(specdiv::rat_str(v));
      }
      emit(Json{{"literal", lit},
                {"non_overlapping", non},
                {"literal_in_kernel", rr.literal_in_kernel},
                {"non_overlapping_in_kernel", rr.non_overlapping_in_kernel},
                {"matches", rr.literal_in_kernel || rr.non_overlapping_in_kernel}});
    } else if (*zdiv) {
      specdiv::DiscriminantForm form(N, Nprime);
      specdiv::FqmSubgroup H = subgroup_arg(N, Nprime, h_json);
      emit(specdiv::divisor_to_json(specdiv::special_divisor(form, H)));
    } else if (*special) {
      specdiv::DiscriminantForm form(N, Nprime);
      specdiv::BoundaryDivisor d =
          specdiv::divisor_from_json(form, read_json_file(divisor_file));
      auto cert = specdiv::is_special(form, d);
      if (cert) {
        emit(specdiv::certificate_to_json(*cert));
      } else {
        emit(Json{{"special", false}});
      }
    } else if (*weyl) {
      specdiv::DiscriminantForm form(N, Nprime);
      specdiv::FqmSubgroup H = subgroup_arg(N, Nprime, weyl_h);
      specdiv::CuspLabel label = specdiv::make_label(star, label_a, label_c);
      auto [nz, nzt] = specdiv::levels_of_cusp(form, label);
      emit(Json{{"constant",
                 specdiv::rat_str(
                     specdiv::weyl_component_constant(form, H, label))},
                {"b2", specdiv::rat_str(
                           specdiv::weyl_component_b2(form, H, label))},
                {"N_z", nz},
                {"N_ztilde", nzt}});
    } else if (*eta_id) {
      specdiv::EtaIdentityResult res =
          specdiv::eta_identity_check(eta_p, eta_r, eta_terms);
      Json coeff = Json::array();
      for (const auto& r : res.constant.coeffs()) {
        coeff.push_back(specdiv::rat_str(r));
      }
      emit(Json{{"holds", res.holds},
                {"constant", coeff},
                {"conductor", res.constant.field()->conductor()}});
    } else if (*eta_psi) {
      specdiv::DiscriminantForm form(N, Nprime);
      specdiv::CuspLabel label = specdiv::make_label(psi_star, psi_a, psi_c);
      auto [s1, s2] =
          specdiv::psi_expansion(form, label, specdiv::Rat(psi_terms));
      emit(Json{{"z1", specdiv::series_to_json(s1)},
                {"z2", specdiv::series_to_json(s2)}});
    } else if (*cross) {
      specdiv::DiscriminantForm form(N, Nprime);
      specdiv::FqmSubgroup H = subgroup_arg(N, Nprime, cross_h);
      specdiv::CrossValidation cv =
          specdiv::cross_validate_boundary(form, H, cross_terms);
      Json ratios = Json::array();
      for (size_t i = 0; i < cv.classes.size(); ++i) {
        ratios.push_back(Json{{"class", specdiv::label_to_json(cv.classes[i])},
                              {"ratio", specdiv::rat_str(cv.ratios[i])}});
      }
      Json out{{"ratios", ratios}, {"constant", cv.constant}};
      if (cv.constant) out["constant_value"] = specdiv::rat_str(cv.constant_value);
      emit(out);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << Json{{"error", e.what()}, {"kind", "usage"}}.dump() << "\n";
    return 2;
  } catch (const specdiv::InvalidArgument& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "invalid-argument"}}.dump()
              << "\n";
    return 2;
  } catch (const specdiv::GuardExceeded& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "guard-exceeded"}}.dump()
              << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
    return 4;
  }
}
