#include "pairemit/report.hpp"

#include <fmt/format.h>
#include <fstream>
#include <stdexcept>

#include "pairemit/errors.hpp"

namespace pairemit::report {

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(std::string_view command, const Config& config) {
  std::string canonical(command);
  canonical += '\n';
  for (const auto& [k, v] : config) canonical += k + "=" + v + "\n";
  return fmt::format("{:016x}", fnv1a64(canonical));
}

std::string header_comment(std::string_view command, const Config& config) {
  std::string out = fmt::format("# pairemit {}\n# config_hash={}\n", command,
                                config_hash(command, config));
  for (const auto& [k, v] : config) out += fmt::format("# {}={}\n", k, v);
  return out;
}

std::string curves_csv(std::string_view command, const Config& config,
                       std::span<const EmissionCurve> curves) {
  if (curves.empty()) throw GridMismatch("no curves to write");
  const auto& times = curves.front().times;
  for (const EmissionCurve& c : curves) {
    if (c.times != times || c.values.size() != times.size()) {
      throw GridMismatch(fmt::format("curve '{}' does not share the common time grid", c.label));
    }
  }
  std::string out = header_comment(command, config);
  out += "t";
  for (const EmissionCurve& c : curves) out += "," + c.label;
  out += "\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += format_double(times[i]);
    for (const EmissionCurve& c : curves) out += "," + format_double(c.values[i]);
    out += "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!f) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p.replace_extension(".json");
  if (p == path) p += ".json";
  return p;
}

}  // namespace pairemit::report
