#include "fibcat/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <optional>

#include "CLI11.hpp"

#include "fibcat/catalog.hpp"
#include "fibcat/correspondence.hpp"
#include "fibcat/enumerate.hpp"
#include "fibcat/fibration.hpp"
#include "fibcat/finality.hpp"
#include "fibcat/homology.hpp"
#include "fibcat/io.hpp"
#include "fibcat/profunctor.hpp"
#include "fibcat/suite.hpp"
#include "fibcat/transport.hpp"

namespace fibcat {

namespace {

Functor load_functor(const std::string& path) {
  auto f = parse_functor(read_json_file(path));
  require_valid(f.source(), path + " source");
  require_valid(f.target(), path + " target");
  require_valid(f, path);
  return f;
}

Profunctor load_profunctor_like(const std::string& path) {
  auto doc = read_json_file(path);
  if (document_kind(doc) == "correspondence") {
    auto c = parse_correspondence(doc);
    require_valid(c.total, path + " total");
    require_valid(c, path);
    return corr_to_profunctor(c);
  }
  auto p = parse_profunctor(doc);
  require_valid(p.source, path + " source");
  require_valid(p.target, path + " target");
  require_valid(p, path);
  return p;
}

Correspondence load_correspondence_like(const std::string& path) {
  auto doc = read_json_file(path);
  if (document_kind(doc) == "profunctor") return collage(load_profunctor_like(path));
  auto c = parse_correspondence(doc);
  require_valid(c.total, path + " total");
  require_valid(c, path);
  return c;
}

Json entry_json(const FiniteCategory& d, const FinalityEntry& e) {
  Json j{{"object", d.object_id(e.object)}, {"nonempty", e.nonempty}, {"connected", e.connected}};
  if (e.homology_trivial) j["homology_trivial"] = *e.homology_trivial;
  return j;
}

Json finality_json(const FinalityVerdict& v) {
  Json entries = Json::array();
  for (const auto& e : v.entries) entries.push_back(entry_json(v.functor.target(), e));
  Json j{{"holds", v.holds}, {"mode", v.certify_dim < 0 ? "pi0_exact" : "certified"}, {"entries", entries}};
  if (v.certify_dim >= 0) j["certificate_degree"] = v.certify_dim;
  if (v.witness) j["witness"] = emit_witness(*v.witness);
  return j;
}

Json adjunction_json(const AdjunctionCheck& a) {
  Json j{{"holds", a.holds}, {"over_k", a.over_k}, {"over_e", a.over_e}};
  if (a.witness) j["witness"] = emit_witness(*a.witness);
  return j;
}

Json universal_json(const UniversalPropertyCheck& u) {
  Json j{{"holds", u.holds}, {"replaced", u.replaced}, {"original", u.original}};
  if (u.witness) j["witness"] = emit_witness(*u.witness);
  return j;
}

Json homology_json(const HomologyReport& r) {
  Json groups = Json::array();
  for (std::size_t k = 0; k < r.groups.size(); ++k)
    groups.push_back({{"degree", k}, {"rank", r.groups[k].rank}, {"torsion", r.groups[k].torsion}});
  return Json{{"certificate_degree", r.max_dim}, {"groups", groups}, {"reduced_trivial", r.reduced_trivial()}};
}

Json error_json(const std::exception& e, int code) {
  static const char* names[] = {"ok", "suite_failure", "parse", "validation", "precondition", "invariant"};
  Json j{{"format_version", kFormatVersion}, {"kind", "error"}, {"class", names[code]}, {"message", e.what()}};
  if (auto* p = dynamic_cast<const PreconditionError*>(&e)) j["witness"] = emit_witness(p->witness());
  if (auto* v = dynamic_cast<const ValidationError*>(&e)) {
    Json list = Json::array();
    for (const auto& w : v->violations()) list.push_back(emit_witness(w));
    j["violations"] = list;
  }
  return j;
}

Json validation_json(const ValidationReport& r) {
  Json list = Json::array();
  for (const auto& w : r.violations) list.push_back(emit_witness(w));
  return list;
}

// Validates any document kind, returning the violations of the first
// invalid layer (categories before the structure on them).
ValidationReport validate_document(const Json& doc) {
  const auto kind = document_kind(doc);
  auto first_bad = [](std::initializer_list<ValidationReport> reps) {
    for (const auto& r : reps)
      if (!r.ok()) return r;
    return ValidationReport{};
  };
  if (kind == "category") return validate_category(parse_category(doc));
  if (kind == "functor") {
    auto f = parse_functor(doc);
    auto a = validate_category(f.source()), b = validate_category(f.target());
    if (!a.ok() || !b.ok()) return first_bad({a, b});
    return validate_functor(f);
  }
  if (kind == "profunctor") {
    auto p = parse_profunctor(doc);
    auto a = validate_category(p.source), b = validate_category(p.target);
    if (!a.ok() || !b.ok()) return first_bad({a, b});
    return validate_profunctor(p);
  }
  if (kind == "set_functor") {
    auto f = parse_set_functor(doc);
    auto a = validate_category(f.base);
    if (!a.ok()) return a;
    return validate_set_functor(f);
  }
  if (kind == "correspondence") {
    auto c = parse_correspondence(doc);
    auto a = validate_category(c.total), b = validate_category(c.source()), d = validate_category(c.target());
    if (!a.ok() || !b.ok() || !d.ok()) return first_bad({a, b, d});
    return validate_correspondence(c);
  }
  throw SchemaError("/kind: unknown document kind '" + kind + "'");
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SchemaError*>(&e)) return exit_parse;
  if (dynamic_cast<const ValidationError*>(&e)) return exit_validation;
  if (dynamic_cast<const PreconditionError*>(&e)) return exit_precondition;
  return exit_invariant;
}

std::size_t enumeration_cap() {
  const char* v = std::getenv("FIBCAT_ENUM_CAP");
  if (!v || !*v) return kDefaultEnumerationCap;
  char* end = nullptr;
  const auto n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw SchemaError("FIBCAT_ENUM_CAP: expected a positive integer, found '" + std::string(v) + "'");
  return static_cast<std::size_t>(n);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite category checks: fibrations, correspondences, finality and homology."};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Add wall-clock time to the report");

  std::string functor_path, fibration_path, over_path, category_path, kind, mode;
  std::vector<std::string> documents;
  int certify_dim = -1, max_dim = 2;
  SuiteOptions suite;
  std::string criteria_list;

  auto* classify_cmd = app.add_subcommand("classify", "Fibration profile of a functor");
  classify_cmd->add_option("--functor", functor_path, "Functor document")->required();
  classify_cmd->add_option("--certify-dim", certify_dim, "Certify comma homology through this degree");

  auto* compose_cmd = app.add_subcommand("compose", "Compose two correspondences or profunctors");
  compose_cmd->add_option("--mode", mode, "corr, prof or bifib")->required()->check(CLI::IsMember({"corr", "prof", "bifib"}));
  compose_cmd->add_option("documents", documents, "Two documents, the first one applied first")->expected(2)->required();

  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "The six conversions among the three presentations");
  roundtrip_cmd->add_option("document", category_path, "Correspondence or profunctor document")->required();

  auto* final_cmd = app.add_subcommand("final", "Is the functor final");
  final_cmd->add_option("--functor", functor_path, "Functor document")->required();
  final_cmd->add_option("--certify-dim", certify_dim, "Certify comma homology through this degree");
  auto* initial_cmd = app.add_subcommand("initial", "Is the functor initial");
  initial_cmd->add_option("--functor", functor_path, "Functor document")->required();
  initial_cmd->add_option("--certify-dim", certify_dim, "Certify comma homology through this degree");

  auto* replace_cmd = app.add_subcommand("replace", "Fibration replacements");
  replace_cmd->add_option("--kind", kind, "cocart, cart, lfib or rfib")->required()->check(CLI::IsMember({"cocart", "cart", "lfib", "rfib"}));
  replace_cmd->add_option("--functor", functor_path, "Functor document")->required();

  auto* push_cmd = app.add_subcommand("pushforward", "Pushforward along an exponentiable functor");
  push_cmd->add_option("--fibration", fibration_path, "Exponentiable functor E -> K")->required();
  push_cmd->add_option("--over", over_path, "Functor Z -> E")->required();

  auto* homology_cmd = app.add_subcommand("homology", "Integral homology of the nerve");
  homology_cmd->add_option("category", category_path, "Category document")->required();
  homology_cmd->add_option("--max-dim", max_dim, "Top degree")->check(CLI::Range(0, 12));

  auto* suite_cmd = app.add_subcommand("suite", "Randomized property suite");
  suite_cmd->add_option("--seed", suite.seed, "Seed");
  suite_cmd->add_option("--size", suite.size, "Instances per randomized family (0 keeps the defaults)")->check(CLI::NonNegativeNumber);
  suite_cmd->add_option("--threads", suite.threads, "Worker threads")->check(CLI::PositiveNumber);
  suite_cmd->add_option("--criteria", criteria_list, "Comma-separated criterion numbers");
  suite.artifact_dir = "fibcat-artifacts";
  suite_cmd->add_option("--artifacts", suite.artifact_dir, "Directory for failing instances");

  auto* validate_cmd = app.add_subcommand("validate", "Validate any document");
  validate_cmd->add_option("document", category_path, "Document")->required();

  std::string catalog_name;
  auto* catalog_cmd = app.add_subcommand("catalog", "Emit a named category");
  catalog_cmd->add_option("name", catalog_name, "interval:N, arrow:N, ret, idem, walking_iso, z2, terminal")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_parse;
  }

  const auto start = std::chrono::steady_clock::now();
  Json report{{"format_version", kFormatVersion}, {"kind", "report"}, {"command", args}};
  int code = exit_ok;
  try {
    const std::size_t cap = enumeration_cap();
    if (classify_cmd->parsed()) {
      auto f = load_functor(functor_path);
      auto profile = classify(f, certify_dim);
      Json verdicts = Json::object();
      for (const auto& [k, v] : profile.verdicts) verdicts[k] = emit_verdict(v);
      report["verdicts"] = verdicts;
      if (certify_dim >= 0) report["certificate_degree"] = certify_dim;
    } else if (compose_cmd->parsed()) {
      if (mode == "corr") {
        auto a = load_correspondence_like(documents[0]);
        auto b = load_correspondence_like(documents[1]);
        auto res = compose_corr(a, b);
        report["composite"] = emit_correspondence(res.result);
        auto pr = check_route_coherence(corr_to_profunctor(a), corr_to_profunctor(b));
        report["route_coherence"] = pr.holds();
        if (res.result.source() == res.result.target())
          report["identity_bimodule"] =
              find_profunctor_iso(corr_to_profunctor(res.result), hom_profunctor(res.result.source())).has_value();
      } else {
        auto p = load_profunctor_like(documents[0]);
        auto q = load_profunctor_like(documents[1]);
        Profunctor result;
        if (mode == "prof") {
          result = compose_prof(p, q).result;
        } else {
          auto x = compose_bifib(profunctor_to_bifib(p), profunctor_to_bifib(q));
          result = bifib_to_profunctor(x.result);
        }
        report["composite"] = emit_profunctor(result);
        report["route_coherence"] = check_route_coherence(p, q).holds();
        if (result.source == result.target)
          report["identity_bimodule"] = find_profunctor_iso(result, hom_profunctor(result.source)).has_value();
      }
      if (!report["route_coherence"].get<bool>()) code = exit_invariant;
    } else if (roundtrip_cmd->parsed()) {
      auto p = load_profunctor_like(category_path);
      Json list = Json::array();
      bool all = true;
      for (const auto& t : all_roundtrips(p)) {
        list.push_back({{"name", t.name}, {"ok", t.ok}, {"detail", t.detail}});
        all = all && t.ok;
      }
      report["conversions"] = list;
      report["all_ok"] = all;
      if (!all) code = exit_invariant;
    } else if (final_cmd->parsed() || initial_cmd->parsed()) {
      auto f = load_functor(functor_path);
      report["finality"] = final_cmd->parsed() ? finality_json(is_final(f, certify_dim))
                                               : finality_json(is_initial(f, certify_dim));
      report["direction"] = final_cmd->parsed() ? "final" : "initial";
    } else if (replace_cmd->parsed()) {
      auto f = load_functor(functor_path);
      report["replacement_kind"] = kind;
      if (kind == "cocart" || kind == "cart") {
        auto r = kind == "cocart" ? cocart_replacement(f) : cart_replacement(f);
        report["projection"] = emit_functor(r.projection);
        report["unit"] = emit_functor(r.unit);
        report["has_adjoint"] = r.adjoint.has_value();
        report["spot_check"] = {
            {"fibration", emit_verdict(kind == "cocart" ? is_cocartesian_fibration(r.projection)
                                                        : is_cartesian_fibration(r.projection))},
            {"unit_fully_faithful", is_fully_faithful(r.unit)}};
      } else {
        const bool left = kind == "lfib";
        auto r = left ? lfib_replacement(f) : rfib_replacement(f);
        report["fibration"] = emit_functor(r.fibration);
        report["values"] = emit_set_functor(r.values);
        report["unit"] = emit_functor(r.unit);
        Json checks = Json::array();
        bool all = true;
        for (const auto& g : enumerate_set_functors(r.values.base, 1, cap)) {
          auto z = left ? unstraighten(g) : unstraighten_contravariant(g);
          auto u = check_replacement_universal_property(r, f, z, cap);
          all = all && u.holds;
          checks.push_back(universal_json(u));
        }
        report["spot_check"] = {{"holds", all}, {"targets", checks}};
      }
    } else if (push_cmd->parsed()) {
      auto pi = load_functor(fibration_path);
      auto zeta = load_functor(over_path);
      auto pf = pushforward_exponentiable(pi, zeta, cap);
      report["pushforward"] = emit_functor(pf.projection);
      const auto& k = pi.target();
      Json points = Json::array();
      for (int x = 0; x < k.object_count(); ++x)
        points.push_back(adjunction_json(check_pushforward_adjunction(pf, pi, zeta, point(k, x), cap)));
      report["spot_check"] = {
          {"global_sections", adjunction_json(check_pushforward_adjunction(pf, pi, zeta, identity_functor(k), cap))},
          {"points", points}};
    } else if (homology_cmd->parsed()) {
      auto c = parse_category(read_json_file(category_path));
      require_valid(c, category_path);
      report["homology"] = homology_json(homology(c, max_dim));
    } else if (suite_cmd->parsed()) {
      if (!criteria_list.empty()) {
        std::stringstream s(criteria_list);
        for (std::string item; std::getline(s, item, ',');) {
          try {
            suite.criteria.push_back(std::stoi(item));
          } catch (const std::exception&) {
            throw SchemaError("--criteria: bad entry '" + item + "'");
          }
        }
      }
      suite.timing = timing;
      auto rep = run_suite(suite);
      report["suite"] = emit_report(rep);
      Json paths = Json::array();
      for (const auto& p : write_failure_artifacts(rep)) paths.push_back(p);
      report["artifacts"] = paths;
      if (!rep.pass()) code = exit_suite_failure;
    } else if (validate_cmd->parsed()) {
      auto rep = validate_document(read_json_file(category_path));
      report["valid"] = rep.ok();
      report["violations"] = validation_json(rep);
      if (!rep.ok()) code = exit_validation;
    } else if (catalog_cmd->parsed()) {
      out << dump(emit_category(named_category(catalog_name)));
      return exit_ok;
    }
  } catch (const std::exception& e) {
    const int c = exit_code_for(e);
    err << dump(error_json(e, c));
    return c;
  }
  if (timing)
    report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  out << dump(report);
  return code;
}

}  // namespace fibcat
