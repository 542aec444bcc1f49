#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace klq {

/// Integer partition with weakly decreasing positive parts.
class Partition {
public:
  Partition() = default;
  /// Sorts and drops zero parts; throws InputError on negative parts.
  explicit Partition(std::vector<int> parts);
  static Partition parse(std::string_view text);  // "2,1,1"
  static Partition single_row(int n) { return Partition({n}); }
  static Partition single_column(int n) { return Partition(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition conjugate() const;
  /// n(lambda) = sum (i-1) lambda_i.
  int n_value() const;
  /// Number of standard Young tableaux (hook length formula).
  long long num_standard_tableaux() const;

  std::string to_string() const;  // "2,1,1"

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition&, const Partition&) = default;

private:
  std::vector<int> parts_;
};

/// All partitions of n, in decreasing lexicographic order: (n), (n-1,1), ..., (1^n).
std::vector<Partition> partitions_of(int n);

std::ostream& operator<<(std::ostream& os, const Partition& p);

}  // namespace klq
