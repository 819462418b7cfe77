#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "arp/errors.hpp"
#include "arp/optimizers.hpp"

namespace arp {

namespace {

constexpr std::string_view kHistoryHeader = "eval,perm,f,dv,T,wall_ms";

double parse_double(std::string_view text, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(fmt::format("line {}: bad number '{}'", line, text), line);
  }
  return v;
}

}  // namespace

void RunConfig::validate() const {
  if (init_design_size < 1) throw DomainError("init design size must be >= 1");
  if (budget < init_design_size) {
    throw DomainError(fmt::format("budget {} is smaller than the initial design size {}", budget,
                                  init_design_size));
  }
}

void RunHistory::add(HistoryEntry entry) {
  entries_.push_back(std::move(entry));
  if (entries_.back().f < entries_[best_].f) best_ = entries_.size() - 1;
}

const HistoryEntry& RunHistory::best() const {
  if (entries_.empty()) throw DomainError("empty run history");
  return entries_[best_];
}

std::vector<double> RunHistory::best_so_far() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(out.empty() ? e.f : std::min(out.back(), e.f));
  return out;
}

void write_history_csv(std::ostream& out, const RunHistory& history) {
  out << kHistoryHeader << '\n';
  for (const auto& e : history.entries()) {
    out << fmt::format("{},{},{},{},{},{:.3f}\n", e.eval, format_permutation(e.order), e.f, e.dv,
                       e.T, e.wall_ms);
  }
}

RunHistory read_history_csv(std::istream& in) {
  RunHistory history;
  std::string line;
  std::size_t number = 0;
  if (!std::getline(in, line)) throw ParseError("history CSV is empty", 0);
  ++number;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHistoryHeader) throw ParseError("unexpected history header", 1);
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    while (true) {
      const auto c = rest.find(',');
      f.push_back(rest.substr(0, c));
      if (c == std::string_view::npos) break;
      rest.remove_prefix(c + 1);
    }
    if (f.size() != 6) throw ParseError(fmt::format("line {}: expected 6 fields", number), number);
    HistoryEntry e;
    e.eval = static_cast<int>(parse_double(f[0], number));
    e.order = parse_permutation(f[1]);
    e.f = parse_double(f[2], number);
    e.dv = parse_double(f[3], number);
    e.T = parse_double(f[4], number);
    e.wall_ms = parse_double(f[5], number);
    history.add(std::move(e));
  }
  return history;
}

Evaluator::Evaluator(const Instance& instance, Representation representation, int budget)
    : instance_(instance),
      representation_(representation),
      budget_(budget),
      start_(std::chrono::steady_clock::now()) {}

bool Evaluator::seen(const Permutation& internal) const {
  return cache_.contains(to_order(internal, representation_).values());
}

double Evaluator::operator()(const Permutation& internal) {
  if (exhausted()) throw DomainError("evaluation budget exhausted");
  Permutation order = to_order(internal, representation_);
  auto it = cache_.find(order.values());
  if (it == cache_.end()) {
    it = cache_.emplace(order.values(), evaluate_sequence(instance_, order).first).first;
  }
  const Evaluation& ev = it->second;
  HistoryEntry entry;
  entry.eval = used() + 1;
  entry.order = std::move(order);
  entry.f = ev.f;
  entry.dv = ev.dv;
  entry.T = ev.T;
  entry.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  history_.add(std::move(entry));
  return ev.f;
}

}  // namespace arp
