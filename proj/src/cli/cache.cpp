#include <filesystem>
#include <fstream>
#include <string>
#include <tuple>

#include "nleig/cli.hpp"

namespace nleig::cli {

bool EigenCache::Key::operator<(const Key& o) const { return std::tie(model, n, tol) < std::tie(o.model, o.n, o.tol); }

EigenCache::EigenCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      Key key{j.at("model").get<std::string>(), j.at("n").get<int>(), j.at("tol").get<double>()};
      spectrum::EigenResult r = eigen_from_json(j.at("result"));
      if (r.n != key.n) throw std::runtime_error("index mismatch");
      entries_[key] = std::move(r);
    } catch (const std::exception& e) {
      warnings_.push_back(path_ + ":" + std::to_string(line_no) + ": skipped corrupt cache line (" + e.what() + ")");
    }
  }
}

std::optional<spectrum::EigenResult> EigenCache::find(const std::string& model, int n, double tol) const {
  const auto it = entries_.find(Key{model, n, tol});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void EigenCache::append(const std::string& model, double tol, const std::vector<spectrum::EigenResult>& results) {
  std::lock_guard<std::mutex> lock(write_mutex_);
  const std::filesystem::path p(path_);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("cannot open cache '" + path_ + "' for appending");
  for (const auto& r : results) {
    if (!r.ok) continue;
    const nlohmann::json j{{"model", model}, {"n", r.n}, {"tol", tol}, {"result", to_json(r)}};
    out << j.dump() << '\n';
    entries_[Key{model, r.n, tol}] = r;
  }
  out.flush();
}

}  // namespace nleig::cli
