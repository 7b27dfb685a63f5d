#include "lpa/persistence.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lpa {

namespace {

void put_le_double(std::string& buf, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) {
    buf.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
  }
}

double get_le_double(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

}  // namespace

void save_checkpoint(const ResidualNetwork& net, const CheckpointMeta& meta,
                     const std::string& path) {
  const std::size_t payload_floats = net.parameter_count();
  std::ostringstream header;
  header << "LPANET " << kCheckpointVersion << "\n"
         << "d_in " << net.dims.d_in << "\n"
         << "d " << net.dims.d << "\n"
         << "hidden " << net.dims.hidden << "\n"
         << "d_y " << net.dims.d_y << "\n"
         << "blocks " << net.dims.n_blocks << "\n"
         << "paradigm " << paradigm_name(meta.paradigm) << "\n"
         << "seed " << meta.seed << "\n"
         << "epochs_completed " << meta.epochs_completed << "\n"
         << "payload_floats " << payload_floats << "\n"
         << "END_HEADER\n";

  std::string payload;
  payload.reserve(payload_floats * 8);
  for (const auto* tensor : parameter_tensors(net)) {
    for (double v : *tensor) put_le_double(payload, v);
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("save_checkpoint: cannot open '" + path +
                             "' for writing");
  }
  out << header.str();
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) {
    throw std::runtime_error("save_checkpoint: write failed for '" + path +
                             "'");
  }
}

namespace {

std::uint64_t header_u64(const std::map<std::string, std::string>& kv,
                         const std::string& key, const std::string& path) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    throw std::runtime_error("load_checkpoint: missing header field '" + key +
                             "' in " + path);
  }
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("load_checkpoint: header field '" + key +
                             "' is not an integer in " + path);
  }
}

}  // namespace

std::pair<ResidualNetwork, CheckpointMeta> load_checkpoint(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_checkpoint: cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_checkpoint: '" + path + "' is empty");
  }
  std::istringstream magic(line);
  std::string tag;
  long long version = -1;
  if (!(magic >> tag >> version) || tag != "LPANET") {
    throw std::runtime_error("load_checkpoint: '" + path +
                             "' is not an LPANET checkpoint");
  }
  if (version != kCheckpointVersion) {
    throw std::runtime_error(
        "load_checkpoint: unsupported checkpoint version " +
        std::to_string(version) + " in " + path + " (supported: " +
        std::to_string(kCheckpointVersion) + ")");
  }

  std::map<std::string, std::string> kv;
  bool header_done = false;
  while (std::getline(in, line)) {
    if (line == "END_HEADER") {
      header_done = true;
      break;
    }
    const auto space = line.find(' ');
    if (space == std::string::npos) {
      throw std::runtime_error("load_checkpoint: malformed header line '" +
                               line + "' in " + path);
    }
    kv[line.substr(0, space)] = line.substr(space + 1);
  }
  if (!header_done) {
    throw std::runtime_error("load_checkpoint: missing END_HEADER in " + path);
  }

  NetworkDims dims;
  dims.d_in = header_u64(kv, "d_in", path);
  dims.d = header_u64(kv, "d", path);
  dims.hidden = header_u64(kv, "hidden", path);
  dims.d_y = header_u64(kv, "d_y", path);
  dims.n_blocks = header_u64(kv, "blocks", path);
  if (dims.d_in == 0 || dims.d == 0 || dims.hidden == 0 || dims.d_y == 0 ||
      dims.n_blocks == 0) {
    throw std::runtime_error("load_checkpoint: zero dimension in header of " +
                             path);
  }

  CheckpointMeta meta;
  auto pit = kv.find("paradigm");
  if (pit == kv.end()) {
    throw std::runtime_error("load_checkpoint: missing header field "
                             "'paradigm' in " + path);
  }
  meta.paradigm = parse_paradigm(pit->second);
  meta.seed = header_u64(kv, "seed", path);
  meta.epochs_completed = header_u64(kv, "epochs_completed", path);

  const std::uint64_t payload_floats = header_u64(kv, "payload_floats", path);

  ResidualNetwork net = init_network(dims, 0);
  if (payload_floats != net.parameter_count()) {
    throw std::runtime_error(
        "load_checkpoint: payload_floats " + std::to_string(payload_floats) +
        " does not match dims (expected " +
        std::to_string(net.parameter_count()) + ") in " + path);
  }

  std::string payload(payload_floats * 8, '\0');
  in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
    throw std::runtime_error(
        "load_checkpoint: truncated payload in " + path + " (expected " +
        std::to_string(payload.size()) + " bytes, got " +
        std::to_string(in.gcount()) + ")");
  }

  const auto* bytes = reinterpret_cast<const unsigned char*>(payload.data());
  std::size_t offset = 0;
  for (auto* tensor : parameter_tensors(net)) {
    for (double& v : *tensor) {
      v = get_le_double(bytes + offset);
      offset += 8;
      if (!std::isfinite(v)) {
        throw std::runtime_error(
            "load_checkpoint: non-finite parameter at payload offset " +
            std::to_string(offset - 8) + " in " + path);
      }
    }
  }
  return {std::move(net), meta};
}

namespace {

struct ConfigValue {
  std::string raw;
  std::size_t line_no = 0;
};

double config_double(const std::string& key, const ConfigValue& v,
                     const std::string& origin) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v.raw, &pos);
    if (pos != v.raw.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument(origin + ":" + std::to_string(v.line_no) +
                                ": key '" + key + "' expects a float, got '" +
                                v.raw + "'");
  }
}

std::uint64_t config_u64(const std::string& key, const ConfigValue& v,
                         const std::string& origin) {
  try {
    std::size_t pos = 0;
    const std::uint64_t u = std::stoull(v.raw, &pos);
    if (pos != v.raw.size()) throw std::invalid_argument("trailing");
    return u;
  } catch (const std::exception&) {
    throw std::invalid_argument(origin + ":" + std::to_string(v.line_no) +
                                ": key '" + key +
                                "' expects a non-negative integer, got '" +
                                v.raw + "'");
  }
}

std::vector<double> config_double_list(const std::string& key,
                                       const ConfigValue& v,
                                       const std::string& origin) {
  std::vector<double> out;
  std::stringstream ss(v.raw);
  std::string field;
  while (std::getline(ss, field, ',')) {
    ConfigValue fv{field, v.line_no};
    out.push_back(config_double(key, fv, origin));
  }
  if (out.empty()) {
    throw std::invalid_argument(origin + ":" + std::to_string(v.line_no) +
                                ": key '" + key +
                                "' expects a comma-separated float list");
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

RunConfig parse_run_config_text(const std::string& text,
                                const std::string& origin) {
  std::map<std::string, ConfigValue> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line +
                                  "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": empty key or value");
    }
    if (kv.count(key)) {
      throw std::invalid_argument(origin + ":" + std::to_string(line_no) +
                                  ": duplicate key '" + key + "'");
    }
    kv[key] = ConfigValue{value, line_no};
  }

  static const std::map<std::string, int> known = {
      {"surface", 0},  {"paradigm", 0}, {"epochs", 0},     {"batch_size", 0},
      {"lr", 0},       {"seed", 0},     {"lambda", 0},     {"d", 0},
      {"hidden", 0},   {"blocks", 0},   {"n_train", 0},    {"n_test", 0},
      {"domain", 0},   {"adam_beta1", 0}, {"adam_beta2", 0}, {"adam_eps", 0},
  };
  for (const auto& [key, value] : kv) {
    if (!known.count(key)) {
      throw std::invalid_argument(origin + ":" +
                                  std::to_string(value.line_no) +
                                  ": unknown key '" + key + "'");
    }
  }
  for (const char* required : {"surface", "paradigm"}) {
    if (!kv.count(required)) {
      throw std::invalid_argument(origin + ": missing required key '" +
                                  std::string(required) + "'");
    }
  }

  RunConfig cfg;
  cfg.surface = parse_surface(kv.at("surface").raw);
  cfg.train.paradigm = parse_paradigm(kv.at("paradigm").raw);
  if (kv.count("epochs")) {
    cfg.train.epochs = config_u64("epochs", kv.at("epochs"), origin);
  }
  if (kv.count("batch_size")) {
    cfg.train.batch_size = config_u64("batch_size", kv.at("batch_size"), origin);
    if (cfg.train.batch_size == 0) {
      throw std::invalid_argument(origin + ": batch_size must be >= 1");
    }
  }
  if (kv.count("lr")) {
    cfg.train.lr = config_double("lr", kv.at("lr"), origin);
    if (!(cfg.train.lr > 0.0)) {
      throw std::invalid_argument(origin + ": lr must be > 0");
    }
  }
  if (kv.count("seed")) cfg.train.seed = config_u64("seed", kv.at("seed"), origin);
  if (kv.count("d")) cfg.dims.d = config_u64("d", kv.at("d"), origin);
  if (kv.count("hidden")) {
    cfg.dims.hidden = config_u64("hidden", kv.at("hidden"), origin);
  }
  if (kv.count("blocks")) {
    cfg.dims.n_blocks = config_u64("blocks", kv.at("blocks"), origin);
  }
  if (cfg.dims.d == 0 || cfg.dims.hidden == 0 || cfg.dims.n_blocks == 0) {
    throw std::invalid_argument(origin +
                                ": d, hidden and blocks must be >= 1");
  }
  if (kv.count("n_train")) {
    cfg.n_train = config_u64("n_train", kv.at("n_train"), origin);
  }
  if (kv.count("n_test")) {
    cfg.n_test = config_u64("n_test", kv.at("n_test"), origin);
  }
  if (cfg.n_train == 0 || cfg.n_test == 0) {
    throw std::invalid_argument(origin + ": n_train and n_test must be >= 1");
  }
  if (kv.count("lambda") && kv.at("lambda").raw != "default") {
    cfg.train.lambda = config_double_list("lambda", kv.at("lambda"), origin);
    if (cfg.train.lambda.size() != cfg.dims.n_blocks) {
      throw std::invalid_argument(
          origin + ": lambda has " + std::to_string(cfg.train.lambda.size()) +
          " entries but blocks = " + std::to_string(cfg.dims.n_blocks));
    }
  }
  if (kv.count("domain")) {
    const auto values = config_double_list("domain", kv.at("domain"), origin);
    if (values.size() != 4) {
      throw std::invalid_argument(origin +
                                  ": domain expects xmin,xmax,ymin,ymax");
    }
    cfg.domain = Domain{values[0], values[1], values[2], values[3]};
    if (!(cfg.domain.xmin < cfg.domain.xmax) ||
        !(cfg.domain.ymin < cfg.domain.ymax)) {
      throw std::invalid_argument(origin + ": degenerate domain");
    }
  }
  if (kv.count("adam_beta1")) {
    cfg.train.adam_beta1 = config_double("adam_beta1", kv.at("adam_beta1"), origin);
  }
  if (kv.count("adam_beta2")) {
    cfg.train.adam_beta2 = config_double("adam_beta2", kv.at("adam_beta2"), origin);
  }
  if (kv.count("adam_eps")) {
    cfg.train.adam_eps = config_double("adam_eps", kv.at("adam_eps"), origin);
  }

  // Validates lambda polarity/length against the paradigm now rather than
  // at first training step.
  effective_lambda(cfg.train, cfg.dims.n_blocks);
  return cfg;
}

RunConfig parse_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("parse_run_config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config_text(buf.str(), path);
}

}  // namespace lpa
