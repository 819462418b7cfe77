#include "arp/catalog.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include <fmt/format.h>

#include "arp/errors.hpp"
#include "arp/random.hpp"

namespace arp {

namespace {

constexpr std::string_view kHeader = "id,epoch_mjd,a_au,e,i_deg,raan_deg,argp_deg,M_deg";
constexpr double kDeg = kPi / 180.0;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_field(std::string_view text, std::string_view name, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError(fmt::format("line {}: cannot parse {} '{}'", line, name, text), line);
  }
  return value;
}

void check_elements(const OrbitalElements& el, int id, std::size_t line) {
  try {
    el.validate();
  } catch (const DomainError& e) {
    throw ValidationError(fmt::format("line {}: record {}: {}", line, id, e.what()), line);
  }
}

}  // namespace

AsteroidCatalog::AsteroidCatalog(std::vector<CatalogRecord> records, std::string source)
    : records_(std::move(records)), source_(std::move(source)) {
  std::unordered_set<int> ids;
  for (const auto& r : records_) {
    check_elements(r.elements, r.id, 0);
    if (!ids.insert(r.id).second) {
      throw ValidationError(fmt::format("duplicate catalog id {}", r.id), 0);
    }
  }
}

const CatalogRecord* AsteroidCatalog::find(int id) const {
  for (const auto& r : records_) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

OrbitalElements AsteroidCatalog::earth() const {
  const CatalogRecord* r = find(0);
  return r != nullptr ? r->elements : default_earth();
}

std::vector<const CatalogRecord*> AsteroidCatalog::asteroids() const {
  std::vector<const CatalogRecord*> out;
  out.reserve(records_.size());
  for (const auto& r : records_) {
    if (r.id != 0) out.push_back(&r);
  }
  return out;
}

OrbitalElements default_earth() {
  OrbitalElements el;
  el.a = 1.00000261 * kAuKm;
  el.e = 0.01671123;
  el.i = 0.0;
  el.raan = 0.0;
  el.argp = 102.93768193 * kDeg;
  el.M0 = 357.52688973 * kDeg;
  el.epoch = 51544.5;
  return el;
}

AsteroidCatalog read_catalog(std::istream& in, const std::string& source) {
  std::vector<CatalogRecord> records;
  std::unordered_set<int> ids;
  std::string raw;
  std::size_t line = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    if (!header_seen) {
      std::string_view h = text;
      if (h.size() >= 3 && static_cast<unsigned char>(h[0]) == 0xEF) h.remove_prefix(3);  // BOM
      std::string compact;
      for (char c : h) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != kHeader) {
        throw ParseError(fmt::format("line {}: expected header '{}'", line, kHeader), line);
      }
      header_seen = true;
      continue;
    }
    const auto f = split(text);
    if (f.size() != 8) {
      throw ParseError(fmt::format("line {}: expected 8 fields, found {}", line, f.size()), line);
    }
    CatalogRecord r;
    r.id = parse_field<int>(f[0], "id", line);
    r.elements.epoch = parse_field<double>(f[1], "epoch_mjd", line);
    r.elements.a = parse_field<double>(f[2], "a_au", line) * kAuKm;
    r.elements.e = parse_field<double>(f[3], "e", line);
    r.elements.i = parse_field<double>(f[4], "i_deg", line) * kDeg;
    r.elements.raan = wrap_two_pi(parse_field<double>(f[5], "raan_deg", line) * kDeg);
    r.elements.argp = wrap_two_pi(parse_field<double>(f[6], "argp_deg", line) * kDeg);
    r.elements.M0 = wrap_two_pi(parse_field<double>(f[7], "M_deg", line) * kDeg);
    check_elements(r.elements, r.id, line);
    if (!(r.elements.i >= 0.0 && r.elements.i <= kPi)) {
      throw ValidationError(fmt::format("line {}: inclination outside [0, 180] deg", line), line);
    }
    if (!ids.insert(r.id).second) {
      throw ValidationError(fmt::format("line {}: duplicate id {}", line, r.id), line);
    }
    records.push_back(r);
  }
  if (!header_seen) throw ParseError("catalog is empty (no header)", line);
  return AsteroidCatalog(std::move(records), source);
}

AsteroidCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open catalog " + path.string(), 0);
  return read_catalog(in, path.string());
}

void write_catalog(std::ostream& out, const AsteroidCatalog& catalog) {
  out << kHeader << '\n';
  for (const auto& r : catalog.records()) {
    const auto& el = r.elements;
    out << fmt::format("{},{},{},{},{},{},{},{}\n", r.id, el.epoch, el.a / kAuKm, el.e,
                       el.i / kDeg, el.raan / kDeg, el.argp / kDeg, el.M0 / kDeg);
  }
}

AsteroidCatalog synthetic_catalog(const SyntheticCatalogOptions& options) {
  if (options.count < 1) throw DomainError("synthetic_catalog: count must be >= 1");
  Rng rng(options.seed);
  std::vector<CatalogRecord> records;
  records.reserve(static_cast<std::size_t>(options.count) + 1);
  if (options.include_earth) records.push_back({0, default_earth()});
  for (int k = 1; k <= options.count; ++k) {
    OrbitalElements el;
    el.epoch = options.epoch;
    el.a = rng.uniform(options.a_min_au, options.a_max_au) * kAuKm;
    el.e = rng.uniform(0.0, options.e_max);
    el.i = rng.uniform(0.0, options.i_max_deg) * kDeg;
    el.raan = rng.uniform(0.0, kTwoPi);
    el.argp = rng.uniform(0.0, kTwoPi);
    el.M0 = rng.uniform(0.0, kTwoPi);
    records.push_back({k, el});
  }
  return AsteroidCatalog(std::move(records),
                         fmt::format("synthetic(count={}, seed={})", options.count, options.seed));
}

}  // namespace arp
