#include "tripletgen/report_io.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tripletgen/errors.hpp"

namespace tripletgen {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string() + ": " + std::strerror(errno));
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write " + path.string() + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot write " + path.string() + ": " + ec.message());
  }
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string rows_to_csv(std::span<const ReportRow> rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += to_string(r.set);
    for (double v : {r.xi_p_uJ, r.xi_p_err, r.xi_sti_uJ, r.xi_sti_err, r.eta_hat, r.eta_err,
                     r.n_measured, r.n_meas_lo, r.n_meas_hi, r.n_model, r.norm_measured,
                     r.norm_model, r.residual}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(std::span<const ReportRow> rows, const std::filesystem::path& path) {
  write_file_atomic(path, rows_to_csv(rows));
}

namespace {

constexpr std::size_t kColumns = 14;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) return fields;
    start = comma + 1;
  }
}

double parse_number(const std::string& field, std::size_t line_no) {
  double v = 0;
  const char* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end)
    throw ConfigError("csv line " + std::to_string(line_no) + ": not a number: \"" + field + "\"");
  return v;
}

}  // namespace

std::vector<ReportRow> parse_csv_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("csv: unexpected header");
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kColumns)
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(kColumns) +
                        " fields");
    ReportRow r;
    r.set = parse_set_label(f[0]);
    double* cols[] = {&r.xi_p_uJ,   &r.xi_p_err,  &r.xi_sti_uJ,     &r.xi_sti_err, &r.eta_hat,
                      &r.eta_err,   &r.n_measured, &r.n_meas_lo,    &r.n_meas_hi,  &r.n_model,
                      &r.norm_measured, &r.norm_model, &r.residual};
    for (std::size_t k = 0; k < kColumns - 1; ++k) *cols[k] = parse_number(f[k + 1], line_no);
    rows.push_back(r);
  }
  return rows;
}

std::vector<DataPoint> load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string() + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<DataPoint> data;
  for (const auto& r : parse_csv_rows(buf.str())) {
    DataPoint p{r.set, r.xi_p_uJ, r.xi_p_err, r.xi_sti_uJ, r.xi_sti_err, r.eta_hat, r.eta_err};
    validate(p);
    data.push_back(p);
  }
  return data;
}

}  // namespace tripletgen
