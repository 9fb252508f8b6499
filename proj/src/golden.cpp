#include "ultraslow/golden.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "ultraslow/laplace.hpp"
#include "ultraslow/mloracle.hpp"
#include "ultraslow/relaxation.hpp"
#include "ultraslow/types.hpp"
#include "ultraslow/weight.hpp"

namespace ultraslow::golden {

namespace {

const WeightFunction& weight_by_name(const std::string& name) {
  for (const auto& [key, w] : catalog()) {
    if (key == name) return w;
  }
  throw std::invalid_argument("golden: unknown catalog weight '" + name + "'");
}

std::string lam_tag(double lam) {
  std::string s = std::to_string(lam);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

}  // namespace

double recompute(const Entry& e) {
  if (e.kind == "k_kernel") return laplace::k_kernel(weight_by_name(e.weight), e.t);
  if (e.kind == "g_kernel") return laplace::g_kernel(weight_by_name(e.weight), e.t, 1e-11);
  if (e.kind == "spectral_G")
    return laplace::spectral_density_G(weight_by_name(e.weight), e.lambda, e.t);
  if (e.kind == "normalization")
    return relax::normalization_check(weight_by_name(e.weight), e.lambda, 1e-9);
  if (e.kind == "ml") return ml::mittag_leffler_neg(e.alpha, e.x);
  throw std::invalid_argument("golden: unknown kind '" + e.kind + "'");
}

std::vector<Entry> compute_canonical() {
  std::vector<Entry> out;
  auto add = [&](Entry e) {
    e.value = recompute(e);
    out.push_back(e);
  };
  for (const char* w : {"const1", "ind_half"}) {
    add({std::string("k1_") + w, "k_kernel", w, 0.0, 1.0, 0.0, 0.0, 0.0, 1e-9});
    add({std::string("g1_") + w, "g_kernel", w, 0.0, 1.0, 0.0, 0.0, 0.0, 1e-8});
  }
  add({"G1_const1_lam1", "spectral_G", "const1", 1.0, 1.0, 0.0, 0.0, 0.0, 1e-9});
  for (const auto& [name, w] : catalog()) {
    (void)w;
    for (double lam : {0.1, 1.0, 100.0}) {
      Entry e;
      e.name = "norm_" + name + "_lam" + lam_tag(lam);
      e.kind = "normalization";
      e.weight = name;
      e.lambda = lam;
      e.tol = 1e-6;
      e.value = 1.0;  // pinned by the identity, not by measurement
      out.push_back(e);
    }
  }
  add({"ml_a05_x1", "ml", "", 0.0, 0.0, 0.5, 1.0, 0.0, 1e-10});
  add({"ml_a10_x1", "ml", "", 0.0, 0.0, 1.0, 1.0, 0.0, 1e-12});
  add({"ml_a03_x2", "ml", "", 0.0, 0.0, 0.3, 2.0, 0.0, 1e-9});
  add({"ml_a07_x025", "ml", "", 0.0, 0.0, 0.7, 0.25, 0.0, 1e-10});
  return out;
}

void write_manifest(const std::string& path, const std::vector<Entry>& entries) {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const Entry& e : entries) {
    j["entries"].push_back({{"name", e.name},
                            {"kind", e.kind},
                            {"weight", e.weight},
                            {"lambda", e.lambda},
                            {"t", e.t},
                            {"alpha", e.alpha},
                            {"x", e.x},
                            {"value", e.value},
                            {"tol", e.tol}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("golden: cannot write " + path);
  out << j.dump(2) << "\n";
}

std::vector<Entry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("golden: cannot open " + path);
  nlohmann::json j;
  in >> j;
  std::vector<Entry> out;
  for (const auto& je : j.at("entries")) {
    Entry e;
    e.name = je.at("name").get<std::string>();
    e.kind = je.at("kind").get<std::string>();
    e.weight = je.at("weight").get<std::string>();
    e.lambda = je.at("lambda").get<double>();
    e.t = je.at("t").get<double>();
    e.alpha = je.at("alpha").get<double>();
    e.x = je.at("x").get<double>();
    e.value = je.at("value").get<double>();
    e.tol = je.at("tol").get<double>();
    out.push_back(e);
  }
  return out;
}

std::vector<CheckResult> check(const std::string& golden_dir) {
  const std::vector<Entry> entries = read_manifest(golden_dir + "/catalog.json");
  std::vector<CheckResult> results;
  for (const Entry& e : entries) {
    CheckResult r;
    r.name = e.name;
    r.stored = e.value;
    r.computed = recompute(e);
    r.tol = e.tol;
    r.pass = std::abs(r.computed - r.stored) <= e.tol;
    results.push_back(r);
  }
  return results;
}

std::string golden_dir_or(const std::string& fallback) {
  const char* env = std::getenv("ULTRASLOW_GOLDEN_DIR");
  return env && *env ? std::string(env) : fallback;
}

}  // namespace ultraslow::golden
