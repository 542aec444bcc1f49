#include "klq/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <ostream>

#include "klq/errors.hpp"

namespace klq {

Partition::Partition(std::vector<int> parts) {
  for (int p : parts) {
    if (p < 0) throw InputError("partition with a negative part");
  }
  std::erase(parts, 0);
  std::sort(parts.begin(), parts.end(), std::greater<>());
  parts_ = std::move(parts);
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InputError("bad partition '" + std::string(text) + "'");
    }
    parts.push_back(std::stoi(std::string(tok)));
    pos = comma + 1;
  }
  return Partition(std::move(parts));
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.empty() ? 0 : static_cast<std::size_t>(parts_[0]), 0);
  for (int p : parts_) {
    for (int j = 0; j < p; ++j) ++c[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(c));
}

int Partition::n_value() const {
  int s = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) s += static_cast<int>(i) * parts_[i];
  return s;
}

long long Partition::num_standard_tableaux() const {
  const Partition conj = conjugate();
  const int n = size();
  // n! / prod hooks, accumulated with interleaved division to stay exact.
  long long num = 1;
  std::vector<long long> hooks;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    for (int j = 0; j < parts_[i]; ++j) {
      hooks.push_back(parts_[i] - j - 1 + conj[static_cast<std::size_t>(j)] - static_cast<int>(i));
    }
  }
  for (int k = 2; k <= n; ++k) num *= k;
  for (long long h : hooks) num /= h;
  return num;
}

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << "(" << p.to_string() << ")"; }

}  // namespace klq
