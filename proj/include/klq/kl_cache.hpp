#pragma once

// Line-oriented JSON persistence for KLTable. Line 1 is a header naming the
// format, version, Cartan type, rank and Hecke convention; every further
// line holds one expansion C'_w = sum_x h_{x,w} t_x.

#include <cstddef>
#include <iosfwd>
#include <string>

#include "klq/hecke.hpp"

namespace klq {

inline constexpr const char* kl_cache_format = "klq-cache";
inline constexpr int kl_cache_version = 1;
inline constexpr const char* kl_cache_convention = "(t_s+v)(t_s-1/v)=0";

/// Writes the header and every memoized entry in ascending id order.
void save_kl_cache(const KLTable& kl, std::ostream& out);
/// Writes to a temporary sibling and renames. Throws CacheError on I/O failure.
void save_kl_cache(const KLTable& kl, const std::string& path);

/// Reads and validates a whole cache, then inserts its entries. Nothing is
/// inserted if any line fails. Each entry must be supported on [e, w], have
/// h_{w,w} = 1 and h_{x,w} in v Z[v] of degree <= l(w) - l(x) with matching
/// parity, and be bar-invariant; together these pin down C'_w uniquely.
/// Throws CacheError with the offending line number. Returns the entry count.
std::size_t load_kl_cache(KLTable& kl, std::istream& in);
std::size_t load_kl_cache(KLTable& kl, const std::string& path);

/// $KLQ_CACHE_DIR/<label>.klq, falling back to $HOME/.cache/klq, then ./.klq-cache.
std::string default_cache_path(const GroupDatum& datum);

}  // namespace klq
