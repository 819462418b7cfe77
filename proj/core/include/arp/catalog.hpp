#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "arp/orbits.hpp"

namespace arp {

struct CatalogRecord {
  int id = 0;
  OrbitalElements elements;
};

/// Orbital element records keyed by integer id. Id 0, when present, is Earth.
class AsteroidCatalog {
 public:
  AsteroidCatalog() = default;

  // Throws ValidationError on duplicate ids or invalid elements.
  AsteroidCatalog(std::vector<CatalogRecord> records, std::string source);

  const std::vector<CatalogRecord>& records() const noexcept { return records_; }
  const std::string& source() const noexcept { return source_; }
  std::size_t size() const noexcept { return records_.size(); }

  const CatalogRecord* find(int id) const;

  // The id 0 record if present, else default_earth().
  OrbitalElements earth() const;

  // Records other than Earth, in file order.
  std::vector<const CatalogRecord*> asteroids() const;

 private:
  std::vector<CatalogRecord> records_;
  std::string source_;
};

// Earth's J2000 mean elements (heliocentric ecliptic) at MJD 51544.5.
OrbitalElements default_earth();

/// Reads the CSV catalog format:
///
///   id,epoch_mjd,a_au,e,i_deg,raan_deg,argp_deg,M_deg
///
/// Blank lines and lines starting with '#' are skipped. Angles are wrapped to
/// [0, 2*pi). Throws ParseError (malformed row or header) or ValidationError
/// (e outside [0, 1), a <= 0, duplicate id), both carrying the 1-based line.
AsteroidCatalog read_catalog(std::istream& in, const std::string& source = "<stream>");
AsteroidCatalog load_catalog(const std::filesystem::path& path);

void write_catalog(std::ostream& out, const AsteroidCatalog& catalog);

struct SyntheticCatalogOptions {
  int count = 2000;
  std::uint64_t seed = 2021;
  double epoch = 59396.0;
  double a_min_au = 2.2;
  double a_max_au = 3.2;
  double e_max = 0.2;
  double i_max_deg = 15.0;
  bool include_earth = true;
};

// Deterministic main-belt-like population (a in [2.2, 3.2] AU by default) for
// tests, benchmarks and examples. Uniform draws of every element from Rng(seed).
AsteroidCatalog synthetic_catalog(const SyntheticCatalogOptions& options = {});

}  // namespace arp
