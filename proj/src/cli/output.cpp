#include "gyrospin/cli/output.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <openssl/evp.h>

#include "gyrospin/errors.hpp"

namespace gyrospin::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  std::string out(buf.data(), res.ptr);
  // large integral values come out as every exact digit
  const auto first = out.find_first_of("123456789");
  const auto last = out.find_last_of("123456789", out.find('e'));
  int sig = 0;
  if (first != std::string::npos)
    for (auto k = first; k <= last; ++k) sig += std::isdigit(static_cast<unsigned char>(out[k])) ? 1 : 0;
  if (sig > 17) {
    res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::scientific);
    out.assign(buf.data(), res.ptr);
  }
  return out;
}

std::string csv_text(const std::vector<std::string>& comments, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (size_t k = 0; k < columns.size(); ++k) {
    if (k) out += ',';
    out += columns[k];
  }
  out += '\n';
  for (const auto& r : rows) {
    if (r.size() != columns.size()) throw DimensionMismatch("csv row width mismatch");
    for (size_t k = 0; k < r.size(); ++k) {
      if (k) out += ',';
      out += format_double(r[k]);
    }
    out += '\n';
  }
  return out;
}

std::string csv_text(const std::vector<std::string>& comments, const SweepTable& table) {
  return csv_text(comments, table.columns, table.rows);
}

std::string csv_text(const std::vector<std::string>& comments, const Trajectory& traj) {
  std::vector<std::string> cols = {"t_s"};
  cols.insert(cols.end(), traj.names.begin(), traj.names.end());
  std::vector<std::vector<double>> rows(traj.times.size());
  for (size_t i = 0; i < traj.times.size(); ++i) {
    rows[i].push_back(traj.times[i]);
    for (const auto& c : traj.columns) rows[i].push_back(c[i]);
  }
  return csv_text(comments, cols, rows);
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw NumericError("sha256: context allocation failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, md.data(), &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw NumericError("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

OutputSet::OutputSet(std::string directory) : dir_(std::move(directory)) {}

void OutputSet::add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

namespace {

void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw Error("write failed for '" + p.string() + "'");
}

}  // namespace

std::string OutputSet::write(nlohmann::json manifest) const {
  std::filesystem::create_directories(dir_);
  nlohmann::json outputs = nlohmann::json::array();
  for (const auto& [name, content] : files_) {
    write_bytes(std::filesystem::path(dir_) / name, content);
    outputs.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
  }
  manifest["outputs"] = outputs;
  const std::string text = manifest.dump(2) + "\n";
  write_bytes(std::filesystem::path(dir_) / "manifest.json", text);
  return text;
}

nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace gyrospin::cli
