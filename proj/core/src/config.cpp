#include "mabcs/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace mabcs {
namespace {

struct BadValue {
  std::string reason;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_real(std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw BadValue{"expected a real number, got '" + std::string(v) + "'"};
  return out;
}

template <typename Int>
Int to_integer(std::string_view v) {
  Int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw BadValue{"expected an integer, got '" + std::string(v) + "'"};
  return out;
}

std::string real_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Key {
  std::string_view name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Member>
Key real_key(std::string_view name, Member member) {
  return {name, [member](RunConfig& c, std::string_view v) { member(c) = to_real(v); },
          [member](const RunConfig& c) { return real_text(member(c)); }};
}

template <typename Int, typename Member>
Key int_key(std::string_view name, Member member) {
  return {name, [member](RunConfig& c, std::string_view v) { member(c) = to_integer<Int>(v); },
          [member](const RunConfig& c) {
            return std::to_string(member(c));
          }};
}

const std::vector<Key>& keys() {
  static const std::vector<Key> table = [] {
    std::vector<Key> k;
    k.push_back(int_key<int>("clients", [](auto& c) -> auto& { return c.env.clients; }));
    k.push_back(real_key("cell_radius_m", [](auto& c) -> auto& { return c.env.cell_radius_m; }));
    k.push_back(real_key("carrier_ghz", [](auto& c) -> auto& { return c.env.carrier_ghz; }));
    k.push_back(real_key("bs_height_m", [](auto& c) -> auto& { return c.env.bs_height_m; }));
    k.push_back(real_key("client_height_m", [](auto& c) -> auto& { return c.env.client_height_m; }));
    k.push_back(real_key("tx_power_dbm", [](auto& c) -> auto& { return c.env.tx_power_dbm; }));
    k.push_back(real_key("antenna_gain_dbi", [](auto& c) -> auto& { return c.env.antenna_gain_dbi; }));
    k.push_back(real_key("rb_bandwidth_hz", [](auto& c) -> auto& { return c.env.rb_bandwidth_hz; }));
    k.push_back(real_key("noise_figure_db", [](auto& c) -> auto& { return c.env.noise_figure_db; }));
    k.push_back(real_key("delta_loss", [](auto& c) -> auto& { return c.env.delta_loss; }));
    k.push_back(real_key("rho_max", [](auto& c) -> auto& { return c.env.rho_max; }));
    k.push_back(real_key("model_size_mbit", [](auto& c) -> auto& { return c.env.model_size_mbit; }));
    k.push_back({"eta",
                 [](RunConfig& c, std::string_view v) {
                   if (v == "none")
                     c.env.eta.reset();
                   else
                     c.env.eta = to_real(v);
                 },
                 [](const RunConfig& c) { return format_eta(c.env.eta); }});
    k.push_back(real_key("min_resource_fraction",
                         [](auto& c) -> auto& { return c.env.min_resource_fraction; }));
    k.push_back(real_key("min_gamma", [](auto& c) -> auto& { return c.env.min_gamma; }));
    k.push_back(real_key("max_gamma", [](auto& c) -> auto& { return c.env.max_gamma; }));
    k.push_back(int_key<int>("min_dataset_size", [](auto& c) -> auto& { return c.env.min_dataset_size; }));
    k.push_back(int_key<int>("max_dataset_size", [](auto& c) -> auto& { return c.env.max_dataset_size; }));
    k.push_back({"strategy",
                 [](RunConfig& c, std::string_view v) {
                   const auto kind = parse_strategy_kind(v);
                   if (!kind)
                     throw BadValue{"unknown strategy '" + std::string(v) +
                                    "' (expected naive_fedcs, extended_fedcs, naive_mab or "
                                    "elementwise_mab)"};
                   c.strategy.kind = *kind;
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.strategy.kind)); }});
    k.push_back(real_key("alpha", [](auto& c) -> auto& { return c.strategy.alpha; }));
    k.push_back(real_key("beta", [](auto& c) -> auto& { return c.strategy.beta; }));
    k.push_back(int_key<int>("window", [](auto& c) -> auto& { return c.strategy.window; }));
    k.push_back(real_key("candidate_fraction", [](auto& c) -> auto& { return c.candidate_fraction; }));
    k.push_back(int_key<int>("s_round", [](auto& c) -> auto& { return c.s_round; }));
    k.push_back(int_key<int>("rounds", [](auto& c) -> auto& { return c.rounds; }));
    k.push_back(int_key<std::uint64_t>("master_seed",
                                       [](auto& c) -> auto& { return c.master_seed; }));
    return k;
  }();
  return table;
}

// Invariant messages start with the offending key; map them back to a line.
std::string key_of_message(const std::string& msg) {
  const auto space = msg.find(' ');
  return msg.substr(0, space);
}

}  // namespace

RunConfig parse_config_text(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string_view::npos)
      throw ConfigError(where + ": expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    const Key* entry = nullptr;
    for (const Key& k : keys())
      if (k.name == key) entry = &k;
    if (!entry) throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    if (seen.count(key))
      throw ConfigError(where + ": key '" + std::string(key) + "' repeated (first set on line " +
                        std::to_string(seen.find(key)->second) + ")");
    seen.emplace(std::string(key), line_no);
    try {
      entry->set(cfg, value);
    } catch (const BadValue& e) {
      throw ConfigError(where + ": key '" + std::string(key) + "': " + e.reason);
    }
  }

  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const std::string key = key_of_message(msg);
    const auto it = seen.find(key);
    if (it != seen.end())
      throw ConfigError("line " + std::to_string(it->second) + ": key '" + key + "': " + msg);
    throw ConfigError("key '" + key + "': " + msg);
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_config(const RunConfig& cfg, std::ostream& out) {
  out << "# resolved configuration\n";
  for (const Key& k : keys()) out << k.name << " = " << k.get(cfg) << '\n';
}

void write_config(const RunConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_config(cfg, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace mabcs
