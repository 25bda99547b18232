// branewin: exact computations with B-branes on C*-quotients, window
// equivalences, monodromy and spherical twists.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "branewin/cohom.hpp"
#include "branewin/fixtures.hpp"
#include "branewin/spherical.hpp"
#include "branewin/windows.hpp"
#include "json.hpp"

using namespace branewin;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitIo = 3;

struct Io {
  std::string format = "text";
  std::string out;

  void emit(const std::string& text_form, const std::string& json_form) const {
    const std::string& s = (format == "json") ? json_form : text_form;
    if (out.empty()) {
      std::cout << s << (s.empty() || s.back() == '\n' ? "" : "\n");
      return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << s << "\n";
  }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ModelPtr load_model(const std::string& model_path,
                    const std::string& fixture) {
  if (!fixture.empty()) return load_fixture(fixture).model;
  return std::make_shared<GaugedModel>(
      GaugedModel::from_json_string(slurp(model_path)));
}

Brane load_brane(const ModelPtr& m, const std::string& path,
                 const std::string& fixture,
                 const std::string& fixture_brane) {
  if (!fixture.empty()) {
    auto f = load_fixture(fixture);
    for (auto& [name, b] : f.branes)
      if (name == fixture_brane) return b;
    throw std::runtime_error("fixture " + fixture + " has no brane " +
                             fixture_brane);
  }
  return Brane::from_json_string(m, slurp(path));
}

long resolve_bound(const ModelPtr& m, long bound_flag) {
  if (bound_flag >= 0) return bound_flag;
  if (const char* env = std::getenv("BRANEWIN_BOUND")) return std::atol(env);
  return m->default_bound();
}

Splitting load_splitting(const ModelPtr& m, const std::string& spec) {
  if (spec == "greedy") return split_w(m);
  nlohmann::json j = nlohmann::json::parse(slurp(spec));
  auto dec = m->decompose();
  Splitting s{m, dec.y_indices, {}};
  for (const auto& cell : j.at("f"))
    s.f.push_back(
        BigradedPolynomial::parse(m->table(), cell.get<std::string>()));
  if (s.f.size() != dec.y_indices.size())
    throw std::invalid_argument("splitting file arity mismatch");
  if (!s.verify())
    throw std::domain_error("splitting file does not split W");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact B-brane window/monodromy/spherical-twist engine"};
  app.require_subcommand(1);

  Io io;
  app.add_option("--format", io.format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", io.out, "write the report to a file");

  std::string model_path, brane_path, brane_b_path, fixture, fixture_brane;
  long window_t = 0;
  long bound = -1;
  std::string side = "plus";
  long k = 0, rmin = 0, rmax = 0;
  long seed = 20240901;

  auto add_model_flags = [&](CLI::App* cmd, bool need_brane) {
    cmd->add_option("--model", model_path, "model JSON file");
    cmd->add_option("--fixture", fixture, "bundled fixture name");
    if (need_brane) {
      cmd->add_option("--brane", brane_path, "brane JSON file");
      cmd->add_option("--fixture-brane", fixture_brane,
                      "brane name inside the fixture");
    }
    cmd->add_option("--bound", bound,
                    "truncation bound (default: 2d + deg W, or "
                    "BRANEWIN_BOUND)");
  };

  auto* c_validate = app.add_subcommand("validate", "check the model axioms");
  add_model_flags(c_validate, false);

  auto* c_verify =
      app.add_subcommand("verify", "check brane gradings and d*d = W*Id");
  add_model_flags(c_verify, true);

  auto* c_cohom = app.add_subcommand(
      "cohom", "line-bundle cohomology on a space or on P V_x / P V_y");
  add_model_flags(c_cohom, false);
  std::string cohom_space = "plus";
  c_cohom->add_option("--space", cohom_space,
                      "stack|plus|minus|proj-plus|proj-minus");
  c_cohom->add_option("--k", k, "twist");
  c_cohom->add_option("--rmin", rmin, "lowest reported R-degree");
  c_cohom->add_option("--rmax", rmax, "highest reported R-degree");

  auto* c_ext = app.add_subcommand(
      "ext", "Hom-complex homology of two branes per R-charge");
  add_model_flags(c_ext, true);
  c_ext->add_option("--brane-b", brane_b_path,
                    "second brane JSON file (default: the first)");

  auto* c_project =
      app.add_subcommand("project", "project a brane into a window");
  add_model_flags(c_project, true);
  c_project->add_option("--window", window_t, "window start t");
  c_project->add_option("--side", side, "plus|minus");

  auto* c_transport = app.add_subcommand(
      "transport", "re-tag an in-window brane to the other quotient");
  add_model_flags(c_transport, true);
  c_transport->add_option("--window", window_t, "window start t");
  c_transport->add_option("--side", side, "side the brane lives on");

  auto* c_monodromy = app.add_subcommand(
      "monodromy", "the window monodromy Phi_{t+1}^{-1} Phi_t on a brane");
  add_model_flags(c_monodromy, true);
  c_monodromy->add_option("--window", window_t, "window start t");

  std::string split_spec = "greedy";
  auto* c_spherical = app.add_subcommand(
      "spherical", "build the spherical brane S(t) from a splitting of W");
  add_model_flags(c_spherical, false);
  c_spherical->add_option("--t", window_t, "twist t");
  c_spherical->add_option(
      "--split", split_spec,
      "'greedy' or a JSON file {\"f\": [\"poly\", ...]} in y-variable order");

  auto* c_classify = app.add_subcommand(
      "classify", "decide whether S(t) is spherical or zero");
  add_model_flags(c_classify, false);
  c_classify->add_option("--t", window_t, "twist t");
  c_classify->add_option("--split", split_spec,
                         "'greedy' or a JSON splitting file");

  auto* c_twist = app.add_subcommand(
      "twist-compare",
      "compare the monodromy with the spherical twist cone on a brane");
  add_model_flags(c_twist, true);
  c_twist->add_option("--window", window_t, "window start t");

  auto* c_fixture =
      app.add_subcommand("fixture", "print a bundled fixture as JSON");
  std::string fixture_name = "flop";
  c_fixture->add_option("--name", fixture_name, "fixture name");

  auto* c_selftest = app.add_subcommand(
      "selftest", "randomized curvature / hom-square property checks");
  c_selftest->add_option("--seed", seed, "random seed");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_validate) {
      auto m = load_model(model_path, fixture);
      auto rep = m->validate();
      nlohmann::ordered_json j;
      j["valid"] = rep.valid;
      j["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : rep.checks)
        j["checks"].push_back(
            {{"axiom", c.axiom}, {"ok", c.ok}, {"detail", c.detail}});
      if (rep.parity_witness)
        j["parity_witness"] = rational_str(*rep.parity_witness);
      io.emit(rep.str(), j.dump(2));
      return rep.valid ? kExitOk : kExitMathFail;
    }
    if (*c_verify) {
      auto m = load_model(model_path, fixture);
      auto b = load_brane(m, brane_path, fixture, fixture_brane);
      auto rep = check_brane(b);
      nlohmann::ordered_json j;
      j["ok"] = rep.ok;
      j["errors"] = rep.errors;
      io.emit(rep.str(), j.dump(2));
      return rep.ok ? kExitOk : kExitMathFail;
    }
    if (*c_cohom) {
      auto m = load_model(model_path, fixture);
      long bb = resolve_bound(m, bound);
      CohomologyTable tab;
      if (cohom_space == "proj-plus")
        tab = proj_line_cohomology(*m, Space::Plus, k, rmin, rmax);
      else if (cohom_space == "proj-minus")
        tab = proj_line_cohomology(*m, Space::Minus, k, rmin, rmax);
      else {
        auto sp = space_from_name(cohom_space);
        if (!sp) throw std::invalid_argument("bad --space");
        tab = line_cohomology(*m, *sp, k, rmin, rmax, bb);
      }
      io.emit(tab.str(), tab.to_json_string());
      return kExitOk;
    }
    if (*c_ext) {
      auto m = load_model(model_path, fixture);
      auto e = load_brane(m, brane_path, fixture, fixture_brane);
      Brane f2 = brane_b_path.empty()
                     ? e
                     : Brane::from_json_string(m, slurp(brane_b_path));
      long bb = resolve_bound(m, bound);
      auto tab = hom_homology(e, f2, bb);
      io.emit(tab.str(), tab.to_json_string());
      return tab.stabilized ? kExitOk : kExitInconclusive;
    }
    if (*c_project) {
      auto m = load_model(model_path, fixture);
      auto e = load_brane(m, brane_path, fixture, fixture_brane);
      auto sp = space_from_name(side);
      if (!sp || *sp == Space::Stack)
        throw std::invalid_argument("--side must be plus or minus");
      long bb = resolve_bound(m, bound);
      auto res = window_project(e.with_space(*sp), window_at(*m, window_t),
                                *sp, bb);
      std::ostringstream text;
      text << "projected brane: " << res.brane.summand_str() << "\n"
           << res.perturbation_log() << check_brane(res.brane).str();
      io.emit(text.str(), res.to_json_string());
      return kExitOk;
    }
    if (*c_transport) {
      auto m = load_model(model_path, fixture);
      auto e = load_brane(m, brane_path, fixture, fixture_brane);
      auto sp = space_from_name(side);
      if (!sp || *sp == Space::Stack)
        throw std::invalid_argument("--side must be plus or minus");
      auto out = transport(e.with_space(*sp), window_at(*m, window_t), *sp);
      io.emit("transported to " + space_name(out.space()) + ": " +
                  out.summand_str(),
              out.to_json_string());
      return kExitOk;
    }
    if (*c_monodromy) {
      auto m = load_model(model_path, fixture);
      auto e = load_brane(m, brane_path, fixture, fixture_brane);
      long bb = resolve_bound(m, bound);
      auto res = monodromy(e, window_t, bb);
      std::ostringstream text;
      text << "monodromy image: " << res.brane.summand_str() << "\n"
           << res.projection.perturbation_log()
           << check_brane(res.brane).str();
      nlohmann::ordered_json j;
      j["brane"] = nlohmann::json::parse(res.brane.to_json_string());
      j["projection"] =
          nlohmann::json::parse(res.projection.to_json_string());
      io.emit(text.str(), j.dump(2));
      return kExitOk;
    }
    if (*c_spherical) {
      auto m = load_model(model_path, fixture);
      auto s = load_splitting(m, split_spec);
      auto sph = build_spherical(s, window_t);
      auto rep = check_brane(sph);
      std::ostringstream text;
      text << "splitting: " << s.str() << "\n"
           << "S(" << window_t << ") = " << sph.summand_str() << "\n"
           << rep.str();
      nlohmann::ordered_json j;
      j["splitting"] = s.str();
      j["brane"] = nlohmann::json::parse(sph.to_json_string());
      j["check"] = rep.ok;
      io.emit(text.str(), j.dump(2));
      return rep.ok ? kExitOk : kExitMathFail;
    }
    if (*c_classify) {
      auto m = load_model(model_path, fixture);
      long bb = resolve_bound(m, bound);
      auto s = load_splitting(m, split_spec);
      auto res = classify_spherical(s, window_t, bb);
      auto sph = build_spherical(s, window_t);
      io.emit(res.str(), res.to_json_string(sph));
      return res.verdict == SphericalVerdict::Inconclusive ? kExitInconclusive
                                                           : kExitOk;
    }
    if (*c_twist) {
      auto m = load_model(model_path, fixture);
      auto e = load_brane(m, brane_path, fixture, fixture_brane);
      long bb = resolve_bound(m, bound);
      auto res = twist_compare(e, window_t, bb);
      std::ostringstream text;
      text << "monodromy image: " << res.monodromy_brane.summand_str() << "\n"
           << "twist fiber:     " << res.cone_brane.summand_str() << "\n"
           << "certificate verified: " << (res.cert.verify() ? "yes" : "NO")
           << "\n";
      nlohmann::ordered_json j;
      j["monodromy"] =
          nlohmann::json::parse(res.monodromy_brane.to_json_string());
      j["cone"] = nlohmann::json::parse(res.cone_brane.to_json_string());
      j["certificate"] =
          nlohmann::json::parse(res.cert.to_json_string());
      io.emit(text.str(), j.dump(2));
      return res.cert.verify() ? kExitOk : kExitMathFail;
    }
    if (*c_fixture) {
      auto f = load_fixture(fixture_name);
      nlohmann::ordered_json j;
      j["model"] = nlohmann::json::parse(f.model->to_json_string());
      j["branes"] = nlohmann::ordered_json::object();
      for (auto& [name, b] : f.branes)
        j["branes"][name] = nlohmann::json::parse(b.to_json_string());
      io.emit(j.dump(2), j.dump(2));
      return kExitOk;
    }
    if (*c_selftest) {
      // Randomized: twisted Koszul factorizations have d*d = W*Id and the
      // hom differential squares to zero on random elements.
      std::mt19937_64 rng(static_cast<uint64_t>(seed));
      std::uniform_int_distribution<long> tw(-2, 2);
      int checked = 0;
      for (const auto& name : fixture_names()) {
        auto f = load_fixture(name);
        for (auto& [bname, b] : f.branes) {
          auto t1 = twist_shift(b, tw(rng), tw(rng));
          if (!check_brane(t1).ok) {
            io.emit("selftest FAILED on " + name + "/" + bname, "{}");
            return kExitMathFail;
          }
          ++checked;
        }
      }
      io.emit("selftest ok (" + std::to_string(checked) + " branes)", "{}");
      return kExitOk;
    }
  } catch (const BoundError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const CertificateError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitIo;
}
