#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "specsbm/error.hpp"
#include "specsbm/experiment.hpp"

namespace specsbm {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(std::string(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::kParse, std::string(what) + ": cannot read '" + t + "' as a number");
  }
  return value;
}

long long parse_int(std::string_view text, std::string_view what) {
  const std::string t = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::kParse, std::string(what) + ": cannot read '" + t + "' as an integer");
  }
  return value;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string mean_field(double v) { return std::isnan(v) ? std::string() : format_double(v); }

}  // namespace

std::string tau_label(const TauSpec& spec) {
  switch (spec.mode) {
    case TauMode::kGrid: return "grid";
    case TauMode::kJy: return "jy";
    case TauMode::kDbar: return "dbar";
    case TauMode::kDbar4: return "dbar4";
    case TauMode::kFixed: return format_double(spec.value);
  }
  return "unknown";
}

TauSpec parse_tau(std::string_view text) {
  if (text == "grid") return {TauMode::kGrid, 0.0};
  if (text == "jy") return {TauMode::kJy, 0.0};
  if (text == "dbar") return {TauMode::kDbar, 0.0};
  if (text == "dbar4") return {TauMode::kDbar4, 0.0};
  const double v = parse_double(text, "tau");
  if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorCode::kParse, "tau must be a nonnegative number");
  return {TauMode::kFixed, v};
}

PlantedModel read_custom_model(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParse, "model line without '=': " + t);
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  for (const char* key : {"K", "sizes", "B"}) {
    if (!kv.count(key)) throw Error(ErrorCode::kParse, std::string("model file is missing ") + key);
  }
  const auto k = static_cast<int>(parse_int(kv["K"], "K"));
  if (k < 1) throw Error(ErrorCode::kParse, "K must be positive");
  std::vector<Index> sizes;
  for (const auto& s : split(kv["sizes"], ',')) sizes.push_back(static_cast<Index>(parse_int(s, "sizes")));
  const auto rows = split(kv["B"], ';');
  if (static_cast<int>(sizes.size()) != k || static_cast<int>(rows.size()) != k) {
    throw Error(ErrorCode::kParse, "sizes and B must have K entries and rows");
  }
  Matrix b(k, k);
  for (int r = 0; r < k; ++r) {
    const auto cells = split(rows[static_cast<std::size_t>(r)], ',');
    if (static_cast<int>(cells.size()) != k) throw Error(ErrorCode::kParse, "B rows must have K entries");
    for (int c = 0; c < k; ++c) b(r, c) = parse_double(cells[static_cast<std::size_t>(c)], "B");
  }
  std::optional<Vector> theta;
  if (kv.count("theta")) {
    const auto cells = split(kv["theta"], ',');
    Vector t(static_cast<Index>(cells.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) t[static_cast<Index>(i)] = parse_double(cells[i], "theta");
    theta = std::move(t);
  }
  Membership z = Membership::contiguous(sizes);
  BlockModel model(std::move(b), std::move(sizes), std::move(theta));
  model.check_membership(z);
  return {std::move(model), std::move(z)};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.rep << ',' << r.dgp << ',' << r.n << ',' << r.k << ',' << r.variant << ',' << r.algo << ','
        << format_double(r.tau) << ',' << optional_field(r.ccp) << ',' << optional_field(r.nmi) << ','
        << static_cast<int>(r.excluded) << ',' << format_double(r.runtime_ms) << '\n';
  }
}

std::vector<ExperimentRecord> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw Error(ErrorCode::kParse, std::string("records must start with the header ") + kCsvHeader);
  }
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 11) throw Error(ErrorCode::kParse, "record needs 11 fields: " + line);
    ExperimentRecord r;
    r.rep = static_cast<int>(parse_int(f[0], "rep"));
    r.dgp = static_cast<int>(parse_int(f[1], "dgp"));
    r.n = static_cast<Index>(parse_int(f[2], "n"));
    r.k = static_cast<int>(parse_int(f[3], "K"));
    r.variant = f[4];
    r.algo = f[5];
    r.tau = parse_double(f[6], "tau");
    if (!f[7].empty()) r.ccp = parse_double(f[7], "ccp");
    if (!f[8].empty()) r.nmi = parse_double(f[8], "nmi");
    const auto ex = parse_int(f[9], "excluded");
    if (ex < 0 || ex > 2) throw Error(ErrorCode::kParse, "excluded must be 0, 1 or 2");
    r.excluded = static_cast<Exclusion>(ex);
    r.runtime_ms = parse_double(f[10], "runtime_ms");
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records, const TauSpec& tau) {
  const bool by_tau = tau.mode == TauMode::kGrid;
  struct Acc {
    SummaryRow row;
    double ccp_sum = 0.0;
    double nmi_sum = 0.0;
    double tau_sum = 0.0;
    Index zero_degree = 0;
  };
  std::vector<Acc> groups;
  std::map<std::tuple<std::string, std::string, double>, std::size_t> index;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.variant, r.algo, by_tau ? r.tau : 0.0);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, groups.size()).first;
      Acc acc;
      acc.row.variant = r.variant;
      acc.row.algo = r.algo;
      acc.row.tau_label = r.variant == "plain" ? "none" : (r.variant == "adaptive" ? "jy" : tau_label(tau));
      groups.push_back(std::move(acc));
    }
    Acc& acc = groups[it->second];
    ++acc.row.total;
    if (r.excluded == Exclusion::kZeroDegree) ++acc.zero_degree;
    if (r.excluded == Exclusion::kNone && r.ccp && r.nmi) {
      ++acc.row.included;
      acc.ccp_sum += *r.ccp;
      acc.nmi_sum += *r.nmi;
      acc.tau_sum += r.tau;
    }
  }
  std::vector<SummaryRow> rows;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (auto& acc : groups) {
    SummaryRow row = acc.row;
    const double inc = static_cast<double>(row.included);
    row.ccp = row.included > 0 ? acc.ccp_sum / inc : nan;
    row.nmi = row.included > 0 ? acc.nmi_sum / inc : nan;
    row.tau = row.included > 0 ? acc.tau_sum / inc : nan;
    row.ratio = static_cast<double>(row.total - acc.zero_degree) / static_cast<double>(row.total);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "variant,algo,tau_label,tau,ccp,nmi,ratio,included,total\n";
  for (const auto& r : rows) {
    out << r.variant << ',' << r.algo << ',' << r.tau_label << ',' << mean_field(r.tau) << ','
        << mean_field(r.ccp) << ',' << mean_field(r.nmi) << ',' << format_double(r.ratio) << ','
        << r.included << ',' << r.total << '\n';
  }
}

std::vector<TableCell> summarize_table(const std::vector<TableInput>& inputs, const std::vector<CellKey>& required) {
  struct Acc {
    TableCell cell;
    double ccp_sum = 0.0;
    double nmi_sum = 0.0;
  };
  std::map<std::tuple<int, Index, std::string, std::string>, Acc> cells;
  for (const auto& input : inputs) {
    for (const auto& r : input.records) {
      if (r.excluded != Exclusion::kNone || !r.ccp || !r.nmi || r.k < 1) continue;
      const Index npk = r.n / r.k;
      Acc& acc = cells[std::make_tuple(r.dgp, npk, r.variant, input.tau_label)];
      acc.cell.dgp = r.dgp;
      acc.cell.k = r.k;
      acc.cell.n_per_k = npk;
      acc.cell.variant = r.variant;
      acc.cell.tau_label = input.tau_label;
      ++acc.cell.reps;
      acc.ccp_sum += *r.ccp;
      acc.nmi_sum += *r.nmi;
    }
  }
  for (const auto& want : required) {
    bool found = false;
    for (const auto& [key, acc] : cells) {
      if (std::get<0>(key) == want.dgp && std::get<1>(key) == want.n_per_k && std::get<3>(key) == want.tau_label) {
        found = true;
        break;
      }
    }
    if (!found) {
      std::ostringstream os;
      os << "no records for dgp " << want.dgp << ", n/K " << want.n_per_k << ", tau " << want.tau_label;
      throw Error(ErrorCode::kMissingCell, os.str());
    }
  }
  std::vector<TableCell> out;
  for (auto& [key, acc] : cells) {
    TableCell cell = acc.cell;
    cell.ccp = acc.ccp_sum / static_cast<double>(cell.reps);
    cell.nmi = acc.nmi_sum / static_cast<double>(cell.reps);
    out.push_back(std::move(cell));
  }
  return out;
}

void write_table(std::ostream& out, const std::vector<TableCell>& cells) {
  out << "dgp,K,n_per_k,variant,tau_label,ccp,nmi,reps\n";
  for (const auto& c : cells) {
    out << c.dgp << ',' << c.k << ',' << c.n_per_k << ',' << c.variant << ',' << c.tau_label << ','
        << format_double(c.ccp) << ',' << format_double(c.nmi) << ',' << c.reps << '\n';
  }
}

}  // namespace specsbm
