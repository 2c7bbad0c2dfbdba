#include "seirah/config.hpp"

#include <fstream>
#include <set>

#include "seirah/error.hpp"

namespace seirah {
namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ValidationError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(std::string_view key) const { return path_.empty() ? std::string(key) : path_ + "." + std::string(key); }

  const json* find(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = node_.find(std::string(key));
    return it == node_.end() ? nullptr : &*it;
  }

  template <class T>
  void read(std::string_view key, T& out) {
    if (const json* v = find(key)) out = convert<T>(*v, field(key));
  }

  template <class T>
  T require(std::string_view key) {
    const json* v = find(key);
    if (!v) throw ValidationError(field(key), "required field is missing");
    return convert<T>(*v, field(key));
  }

  ObjectReader child(std::string_view key) {
    static const json empty = json::object();
    const json* v = find(key);
    return ObjectReader(v ? *v : empty, field(key));
  }

  bool has(std::string_view key) const { return node_.contains(std::string(key)); }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ValidationError(field(key), "unknown key");
    }
  }

  template <class T>
  static T convert(const json& v, const std::string& field) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ValidationError(field, "expected true or false");
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ValidationError(field, "expected an integer");
      if (std::is_unsigned_v<T> && v.get<std::int64_t>() < 0) throw ValidationError(field, "must be >= 0");
      return v.get<T>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ValidationError(field, "expected a number");
      return v.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ValidationError(field, "expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw ValidationError(field, "expected an array of numbers");
      T out;
      for (std::size_t i = 0; i < v.size(); ++i) out.push_back(convert<double>(v[i], field + "[" + std::to_string(i) + "]"));
      return out;
    } else {
      static_assert(sizeof(T) == 0, "unsupported config type");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

// Re-throws a component ParameterError as a ValidationError on `field`.
template <class F>
void check(const std::string& field, F&& f) {
  try {
    f();
  } catch (const ParameterError& e) {
    throw ValidationError(field, e.what());
  }
}

void check_probability(const std::string& field, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(field, "must lie in [0, 1]");
}

}  // namespace

RunConfig parse_config(const json& doc) {
  RunConfig cfg;
  cfg.source = doc;
  ObjectReader root(doc, "");

  root.read("scale", cfg.scale);
  if (!(cfg.scale > 0.0)) throw ValidationError("scale", "must be > 0");

  const json* regions = root.find("regions");
  if (!regions || !regions->is_array() || regions->empty()) {
    throw ValidationError("regions", "expected a non-empty array of regions");
  }
  cfg.scenario.regions.clear();
  for (std::size_t i = 0; i < regions->size(); ++i) {
    ObjectReader r((*regions)[i], "regions[" + std::to_string(i) + "]");
    RegionSpec spec;
    spec.name = r.require<std::string>("name");
    spec.population = r.require<std::uint64_t>("population");
    spec.commuting = r.require<std::uint64_t>("commuting");
    spec.scale = cfg.scale;
    r.finish();
    if (spec.population == 0) throw ValidationError(r.field("population"), "must be > 0");
    if (spec.commuting > spec.population) throw ValidationError(r.field("commuting"), "exceeds population");
    check(r.field("commuting"), [&] { spec.validate(); });
    cfg.scenario.regions.push_back(spec);
  }

  {
    auto net = root.child("network");
    auto res = net.child("residence");
    cfg.scenario.residence.k = res.require<std::uint32_t>("k");
    cfg.scenario.residence.p = res.require<double>("p");
    res.finish();
    auto work = net.child("work");
    cfg.scenario.work.k = work.require<std::uint32_t>("k");
    cfg.scenario.work.p = work.require<double>("p");
    work.finish();
    net.finish();
    check_probability("network.residence.p", cfg.scenario.residence.p);
    check_probability("network.work.p", cfg.scenario.work.p);
    if (cfg.scenario.work.k < 1) throw ValidationError("network.work.k", "must be >= 1");
    for (std::size_t i = 0; i < cfg.scenario.regions.size(); ++i) {
      const auto n = cfg.scenario.regions[i].scaled_population();
      check("network.residence.k", [&] { NetworkParams{n, cfg.scenario.residence.k, cfg.scenario.residence.p}.validate(); });
    }
  }

  {
    auto t = root.child("thresholds");
    auto& th = cfg.scenario.thresholds;
    t.read("e_to_a", th.e_to_a);
    t.read("e_to_i", th.e_to_i);
    t.read("a_to_h", th.a_to_h);
    t.read("a_to_r", th.a_to_r);
    t.read("i_to_h", th.i_to_h);
    t.read("h_to_r", th.h_to_r);
    t.read("literal_exceedance", th.literal_exceedance);
    t.finish();
    for (const auto& [name, v] : {std::pair{"e_to_a", th.e_to_a}, {"e_to_i", th.e_to_i}, {"a_to_h", th.a_to_h},
                                  {"a_to_r", th.a_to_r}, {"i_to_h", th.i_to_h}, {"h_to_r", th.h_to_r}}) {
      check_probability(std::string("thresholds.") + name, v);
    }
    check("thresholds", [&] { th.validate(); });
  }

  {
    auto s = root.child("seeding");
    s.read("exposed_per_region", cfg.scenario.seeds_per_region);
    s.finish();
    for (const auto& r : cfg.scenario.regions) {
      if (cfg.scenario.seeds_per_region > r.scaled_population()) {
        throw ValidationError("seeding.exposed_per_region", "exceeds the size of region '" + r.name + "'");
      }
    }
  }

  {
    auto s = root.child("seeds");
    s.read("topology", cfg.scenario.topology_seed);
    s.read("master", cfg.scenario.master_seed);
    s.finish();
  }

  {
    auto inf = root.child("inference");
    inf.read("epsilon", cfg.inference.epsilon);
    inf.read("window", cfg.inference.window);
    inf.read("replicates", cfg.inference.replicates);
    inf.read("beta_prior", cfg.inference.beta_prior);
    inf.read("max_iterations", cfg.inference.max_iterations);
    inf.finish();
    if (!(cfg.inference.epsilon > 0.0)) throw ValidationError("inference.epsilon", "must be > 0");
    if (cfg.inference.replicates < 1) throw ValidationError("inference.replicates", "must be >= 1");
    check_probability("inference.beta_prior", cfg.inference.beta_prior);
    if (cfg.inference.max_iterations < 1) throw ValidationError("inference.max_iterations", "must be >= 1");
  }

  {
    auto sim = root.child("simulation");
    sim.read("days", cfg.days);
    if (const json* b = sim.find("beta")) {
      cfg.beta = ObjectReader::convert<double>(*b, "simulation.beta");
      check_probability("simulation.beta", *cfg.beta);
    }
    if (const json* d = sim.find("start_date")) {
      const auto text = ObjectReader::convert<std::string>(*d, "simulation.start_date");
      try {
        cfg.start_date = parse_date(text);
      } catch (const DataError& e) {
        throw ValidationError("simulation.start_date", e.what());
      }
    }
    sim.read("node_history", cfg.node_history);
    sim.finish();
  }

  {
    auto sw = root.child("sweep");
    sw.read("p_r", cfg.grid.p_r);
    sw.read("p_w", cfg.grid.p_w);
    sw.read("seeds_per_cell", cfg.grid.seeds_per_cell);
    sw.read("rmse_threshold", cfg.rmse_threshold);
    sw.finish();
    check("sweep", [&] { cfg.grid.validate(); });
    if (!(cfg.rmse_threshold >= 0.0)) throw ValidationError("sweep.rmse_threshold", "must be >= 0");
  }

  {
    auto paths = root.child("paths");
    paths.read("observed", cfg.observed_path);
    paths.read("indicator", cfg.indicator_path);
    paths.read("beta", cfg.beta_path);
    paths.read("out_dir", cfg.out_dir);
    std::string gaps = "error";
    paths.read("gap_policy", gaps);
    paths.finish();
    if (gaps == "error") {
      cfg.gaps = GapPolicy::kError;
    } else if (gaps == "zero_fill") {
      cfg.gaps = GapPolicy::kZeroFill;
    } else {
      throw ValidationError("paths.gap_policy", "expected 'error' or 'zero_fill'");
    }
  }

  root.finish();
  return cfg;
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ValidationError(std::string(assignment), "override must look like key.path=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t start = 0;
  while (start <= key.size()) {
    const auto dot = key.find('.', start);
    std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    std::optional<std::size_t> index;
    if (auto br = part.find('['); br != std::string::npos && part.back() == ']') {
      index = std::stoul(part.substr(br + 1, part.size() - br - 2));
      part = part.substr(0, br);
    }
    if (!node->is_object()) throw ValidationError(key, "cannot descend into a non-object");
    node = &(*node)[part];
    if (index) {
      if (!node->is_array() || *index >= node->size()) throw ValidationError(key, "array index out of range");
      node = &(*node)[*index];
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = std::move(value);
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config '" + path + "'");
  json doc = json::parse(is, nullptr, false, true);
  if (doc.is_discarded()) throw ValidationError(path, "not valid JSON");
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

std::uint64_t config_hash(const json& doc) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : doc.dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace seirah
