#include "dimsp/problems/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "dimsp/errors.hpp"
#include "dimsp/format.hpp"

namespace dimsp {

namespace {

// Line reader that strips trailing carriage returns and whitespace and keeps
// a 1-based line counter for error reporting.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_;
    while (!out.empty() && (out.back() == '\r' || out.back() == ' ' || out.back() == '\t')) {
      out.pop_back();
    }
    return true;
  }

  // Next line, failing with ParseError if the stream is exhausted.
  std::string require(const std::string& what) {
    std::string line;
    if (!next(line)) {
      throw ParseError(line_ + 1, "unexpected end of file, expected " + what);
    }
    return line;
  }

  void expect_blank(const std::string& what) {
    const std::string line = require(what);
    if (!line.empty()) throw ParseError(line_, "expected " + what);
  }

  // Everything after the current position must be blank.
  void expect_trailing_blank() {
    std::string line;
    while (next(line)) {
      if (!line.empty()) throw ParseError(line_, "unexpected content after instance data");
    }
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 0;
};

std::vector<long long> parse_ints(const std::string& line, int line_number) {
  std::vector<long long> out;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError(line_number, "expected integer, got '" + token + "'");
    }
    out.push_back(value);
  }
  return out;
}

std::vector<double> parse_reals(const std::string& line, int line_number) {
  std::vector<double> out;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) {
    try {
      std::size_t consumed = 0;
      const double value = std::stod(token, &consumed);
      if (consumed != token.size()) throw std::invalid_argument(token);
      out.push_back(value);
    } catch (const std::exception&) {
      throw ParseError(line_number, "expected number, got '" + token + "'");
    }
  }
  return out;
}

}  // namespace

JsspInstance parse_jssp(std::istream& in) {
  LineReader reader(in);
  const std::string header = reader.require("'num_jobs num_machines' header");
  const std::vector<long long> dims = parse_ints(header, reader.line());
  if (dims.size() != 2 || dims[0] <= 0 || dims[1] <= 0) {
    throw ParseError(reader.line(), "expected 'num_jobs num_machines' header");
  }
  JsspInstance inst;
  inst.num_jobs = static_cast<int>(dims[0]);
  inst.num_machines = static_cast<int>(dims[1]);
  inst.jobs.resize(static_cast<std::size_t>(inst.num_jobs));

  for (int j = 0; j < inst.num_jobs; ++j) {
    const std::string line = reader.require("job line with " +
                                            std::to_string(2 * inst.num_machines) +
                                            " integers");
    const std::vector<long long> fields = parse_ints(line, reader.line());
    if (static_cast<int>(fields.size()) != 2 * inst.num_machines) {
      throw ParseError(reader.line(),
                       "job line has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(2 * inst.num_machines));
    }
    std::vector<bool> visited(static_cast<std::size_t>(inst.num_machines), false);
    for (int o = 0; o < inst.num_machines; ++o) {
      const long long machine = fields[static_cast<std::size_t>(2 * o)];
      const long long time = fields[static_cast<std::size_t>(2 * o + 1)];
      if (machine < 0 || machine >= inst.num_machines) {
        throw ParseError(reader.line(), "machine index " + std::to_string(machine) +
                                            " outside [0, " +
                                            std::to_string(inst.num_machines) + ")");
      }
      if (visited[static_cast<std::size_t>(machine)]) {
        throw ParseError(reader.line(), "job visits machine " +
                                            std::to_string(machine) + " twice");
      }
      visited[static_cast<std::size_t>(machine)] = true;
      if (time <= 0) {
        throw ParseError(reader.line(), "processing time must be positive, got " +
                                            std::to_string(time));
      }
      inst.jobs[static_cast<std::size_t>(j)].push_back(
          JsspOperation{static_cast<int>(machine), static_cast<int>(time)});
    }
  }
  reader.expect_trailing_blank();
  return inst;
}

TspInstance parse_tsplib(std::istream& in) {
  LineReader reader(in);
  std::string name;
  int dimension = -1;
  bool euc2d = false;
  bool saw_edge_weight_type = false;

  std::string line;
  bool in_coords = false;
  std::vector<std::array<double, 2>> coords;
  std::vector<bool> seen;

  while (reader.next(line)) {
    if (line.empty()) {
      if (in_coords && static_cast<int>(coords.size()) == dimension) continue;
      throw ParseError(reader.line(), "unexpected blank line");
    }
    if (in_coords) {
      if (line == "EOF") {
        in_coords = false;
        reader.expect_trailing_blank();
        break;
      }
      const std::vector<double> fields = parse_reals(line, reader.line());
      if (fields.size() != 3) {
        throw ParseError(reader.line(), "expected 'index x y' node line");
      }
      const int index = static_cast<int>(fields[0]);
      if (fields[0] != index || index < 1 || index > dimension) {
        throw ParseError(reader.line(), "node index outside [1, " +
                                            std::to_string(dimension) + "]");
      }
      if (seen[static_cast<std::size_t>(index - 1)]) {
        throw ParseError(reader.line(), "duplicate node index " + std::to_string(index));
      }
      seen[static_cast<std::size_t>(index - 1)] = true;
      coords[static_cast<std::size_t>(index - 1)] = {fields[1], fields[2]};
      continue;
    }

    const std::size_t colon = line.find(':');
    std::string key = line.substr(0, colon == std::string::npos ? line.size() : colon);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value;
    if (colon != std::string::npos) {
      value = line.substr(colon + 1);
      while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) {
        value.erase(value.begin());
      }
    }

    if (key == "NAME") {
      name = value;
    } else if (key == "TYPE") {
      if (value != "TSP") {
        throw ParseError(reader.line(), "TYPE must be TSP, got '" + value + "'");
      }
    } else if (key == "COMMENT") {
      // ignored
    } else if (key == "DIMENSION") {
      const std::vector<long long> v = parse_ints(value, reader.line());
      if (v.size() != 1 || v[0] < 1) {
        throw ParseError(reader.line(), "DIMENSION must be a positive integer");
      }
      dimension = static_cast<int>(v[0]);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      saw_edge_weight_type = true;
      if (value != "EUC_2D") {
        throw UnsupportedEdgeWeightType("EDGE_WEIGHT_TYPE '" + value +
                                        "' is not supported (EUC_2D only)");
      }
      euc2d = true;
    } else if (key == "NODE_COORD_SECTION") {
      if (dimension < 1) {
        throw ParseError(reader.line(), "NODE_COORD_SECTION before DIMENSION");
      }
      if (!saw_edge_weight_type) {
        throw ParseError(reader.line(), "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
      }
      in_coords = true;
      coords.assign(static_cast<std::size_t>(dimension), {0.0, 0.0});
      seen.assign(static_cast<std::size_t>(dimension), false);
    } else {
      throw ParseError(reader.line(), "unknown keyword '" + key + "'");
    }
  }

  if (dimension < 1) throw ParseError(reader.line() + 1, "missing DIMENSION");
  if (coords.empty()) throw ParseError(reader.line() + 1, "missing NODE_COORD_SECTION");
  for (int i = 0; i < dimension; ++i) {
    if (!seen[static_cast<std::size_t>(i)]) {
      throw ParseError(reader.line() + 1, "missing node " + std::to_string(i + 1));
    }
  }
  return TspInstance::from_coords(name, std::move(coords), euc2d);
}

QmkpInstance parse_qkp(std::istream& in, int num_knapsacks) {
  if (num_knapsacks < 1) {
    throw ConfigError("knapsacks: must be >= 1, got " + std::to_string(num_knapsacks));
  }
  LineReader reader(in);
  QmkpInstance inst;
  inst.name = reader.require("instance name");
  if (inst.name.empty()) throw ParseError(reader.line(), "instance name is empty");

  const std::vector<long long> nv = parse_ints(reader.require("object count"), reader.line());
  if (nv.size() != 1 || nv[0] < 1) {
    throw ParseError(reader.line(), "expected positive object count");
  }
  inst.num_objects = static_cast<int>(nv[0]);
  const int n = inst.num_objects;

  inst.linear_profit = parse_ints(reader.require("linear profit line"), reader.line());
  if (static_cast<int>(inst.linear_profit.size()) != n) {
    throw ParseError(reader.line(), "expected " + std::to_string(n) +
                                        " linear profits, got " +
                                        std::to_string(inst.linear_profit.size()));
  }
  for (long long p : inst.linear_profit) {
    if (p < 0) throw ParseError(reader.line(), "linear profit must be non-negative");
  }

  inst.pair_profit.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  for (int i = 0; i < n - 1; ++i) {
    const std::vector<long long> row =
        parse_ints(reader.require("quadratic profit row"), reader.line());
    if (static_cast<int>(row.size()) != n - 1 - i) {
      throw ParseError(reader.line(), "quadratic row has " + std::to_string(row.size()) +
                                          " entries, expected " + std::to_string(n - 1 - i));
    }
    for (int j = i + 1; j < n; ++j) {
      const long long p = row[static_cast<std::size_t>(j - i - 1)];
      if (p < 0) throw ParseError(reader.line(), "pairwise profit must be non-negative");
      inst.set_pair(i, j, p);
    }
  }

  reader.expect_blank("blank separator line");

  const std::vector<long long> ct = parse_ints(reader.require("constraint type"), reader.line());
  if (ct.size() != 1 || (ct[0] != 0 && ct[0] != 1)) {
    throw ParseError(reader.line(), "expected constraint type 0 or 1");
  }
  inst.constraint_type = static_cast<int>(ct[0]);

  const std::vector<long long> cap = parse_ints(reader.require("capacity"), reader.line());
  if (cap.size() != 1 || cap[0] < 1) {
    throw ParseError(reader.line(), "expected positive capacity");
  }
  inst.declared_capacity = cap[0];

  inst.weights = parse_ints(reader.require("weights line"), reader.line());
  if (static_cast<int>(inst.weights.size()) != n) {
    throw ParseError(reader.line(), "expected " + std::to_string(n) + " weights, got " +
                                        std::to_string(inst.weights.size()));
  }
  for (long long w : inst.weights) {
    if (w <= 0) throw ParseError(reader.line(), "weights must be positive");
  }
  reader.expect_trailing_blank();

  inst.split_capacity(num_knapsacks);
  return inst;
}

void write_jssp(std::ostream& out, const JsspInstance& instance) {
  out << instance.num_jobs << ' ' << instance.num_machines << '\n';
  for (const auto& job : instance.jobs) {
    for (std::size_t o = 0; o < job.size(); ++o) {
      if (o > 0) out << ' ';
      out << job[o].machine << ' ' << job[o].time;
    }
    out << '\n';
  }
}

void write_tsplib(std::ostream& out, const TspInstance& instance) {
  out << "NAME: " << instance.name << '\n';
  out << "TYPE: TSP\n";
  out << "DIMENSION: " << instance.num_cities << '\n';
  out << "EDGE_WEIGHT_TYPE: EUC_2D\n";
  out << "NODE_COORD_SECTION\n";
  for (int i = 0; i < instance.num_cities; ++i) {
    out << (i + 1) << ' ' << format_number(instance.coords[static_cast<std::size_t>(i)][0])
        << ' ' << format_number(instance.coords[static_cast<std::size_t>(i)][1]) << '\n';
  }
  out << "EOF\n";
}

void write_qkp(std::ostream& out, const QmkpInstance& instance) {
  out << instance.name << '\n';
  out << instance.num_objects << '\n';
  for (int i = 0; i < instance.num_objects; ++i) {
    if (i > 0) out << ' ';
    out << instance.linear_profit[static_cast<std::size_t>(i)];
  }
  out << '\n';
  for (int i = 0; i < instance.num_objects - 1; ++i) {
    for (int j = i + 1; j < instance.num_objects; ++j) {
      if (j > i + 1) out << ' ';
      out << instance.pair(i, j);
    }
    out << '\n';
  }
  out << '\n';
  out << instance.constraint_type << '\n';
  out << instance.declared_capacity << '\n';
  for (int i = 0; i < instance.num_objects; ++i) {
    if (i > 0) out << ' ';
    out << instance.weights[static_cast<std::size_t>(i)];
  }
  out << '\n';
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF terminators
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

JsspInstance parse_jssp_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  JsspInstance inst = parse_jssp(in);
  if (inst.name.empty()) inst.name = path.stem().string();
  return inst;
}

TspInstance parse_tsplib_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  TspInstance inst = parse_tsplib(in);
  if (inst.name.empty()) {
    // rebuild with the filename as instance name; distances are unaffected
    inst.name = path.stem().string();
  }
  return inst;
}

QmkpInstance parse_qkp_file(const std::filesystem::path& path, int num_knapsacks) {
  auto in = open_input(path);
  return parse_qkp(in, num_knapsacks);
}

void write_jssp_file(const std::filesystem::path& path, const JsspInstance& instance) {
  auto out = open_output(path);
  write_jssp(out, instance);
}

void write_tsplib_file(const std::filesystem::path& path, const TspInstance& instance) {
  auto out = open_output(path);
  write_tsplib(out, instance);
}

void write_qkp_file(const std::filesystem::path& path, const QmkpInstance& instance) {
  auto out = open_output(path);
  write_qkp(out, instance);
}

std::unique_ptr<Problem> load_problem(const std::string& kind,
                                      const std::filesystem::path& path,
                                      int num_knapsacks) {
  if (kind == "jssp") return std::make_unique<JsspProblem>(parse_jssp_file(path));
  if (kind == "tsp") return std::make_unique<TspProblem>(parse_tsplib_file(path));
  if (kind == "qmkp") {
    return std::make_unique<QmkpProblem>(parse_qkp_file(path, num_knapsacks));
  }
  throw ConfigError("problem.kind: unknown problem kind '" + kind + "'");
}

}  // namespace dimsp
