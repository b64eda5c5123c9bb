#include <algorithm>
#include <bit>
#include <cmath>

#include "radonlab/errors.hpp"
#include "radonlab/parallel.hpp"
#include "radonlab/random.hpp"
#include "radonlab/weyl.hpp"

namespace radonlab {

namespace {

template <typename Key>
std::uint64_t hash_key(Key k) {
  if constexpr (sizeof(Key) == 8) {
    return mix64(k);
  } else {
    return mix64(static_cast<std::uint64_t>(k) ^ mix64(static_cast<std::uint64_t>(k >> 64)));
  }
}

// Open addressing with linear probing; slot key 0 means empty, so keys are
// stored shifted by one.
template <typename Key>
class CountTable {
 public:
  explicit CountTable(std::size_t capacity) : keys_(capacity, 0), counts_(capacity, 0), mask_(capacity - 1) {}

  void add(Key key, std::uint64_t c) {
    const Key stored = key + 1;
    std::size_t i = hash_key(key) & mask_;
    while (true) {
      if (keys_[i] == stored) {
        counts_[i] += c;
        return;
      }
      if (keys_[i] == 0) {
        keys_[i] = stored;
        counts_[i] = c;
        return;
      }
      i = (i + 1) & mask_;
    }
  }

  void merge_into(CountTable& other) const {
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i] != 0) other.add(keys_[i] - 1, counts_[i]);
  }

  i128 sum_of_squares() const {
    i128 total = 0;
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (keys_[i] != 0) total += static_cast<i128>(counts_[i]) * counts_[i];
    return total;
  }

 private:
  std::vector<Key> keys_;
  std::vector<std::uint64_t> counts_;
  std::size_t mask_;
};

template <typename Key, typename Sink>
void extend(const std::vector<Key>& kc, int remaining, Key partial, Sink& sink) {
  if (remaining == 0) {
    sink(partial);
    return;
  }
  if (remaining == 1) {
    for (const Key c : kc) sink(partial + c);
    return;
  }
  for (const Key c : kc) extend(kc, remaining - 1, partial + c, sink);
}

// Every m-tuple whose leading index lies in [begin, end).
template <typename Key, typename Sink>
void enumerate_block(const std::vector<Key>& kc, int m, std::size_t begin, std::size_t end, Sink& sink) {
  for (std::size_t k1 = begin; k1 < end; ++k1) extend(kc, m - 1, kc[k1], sink);
}

struct Plan {
  CountingMethod method;
  unsigned workers;
  std::size_t capacity;
};

template <typename Key>
Plan plan_counting(std::uint64_t tuples, u128 keyspace, const MeanValueOptions& options) {
  const u128 bound = std::min<u128>(tuples, keyspace);
  const std::uint64_t wanted = static_cast<std::uint64_t>(std::ceil(1.3 * static_cast<double>(bound))) + 1;
  const std::size_t capacity = std::bit_ceil(wanted);
  const std::uint64_t slot = sizeof(Key) + sizeof(std::uint64_t);
  const auto hash_bytes = [&](unsigned w) { return static_cast<u128>(w) * capacity * slot; };
  const u128 sort_bytes = static_cast<u128>(tuples) * sizeof(Key);
  const unsigned workers = worker_count(options.threads);

  if (options.method != CountingMethod::Sort) {
    if (hash_bytes(workers) <= options.memory_budget) return {CountingMethod::Hash, workers, capacity};
    if (hash_bytes(1) <= options.memory_budget) return {CountingMethod::Hash, 1, capacity};
    if (options.method == CountingMethod::Hash)
      throw BudgetExceeded("hash table for " + std::to_string(tuples) + " tuples exceeds the memory budget");
  }
  if (sort_bytes <= options.memory_budget) return {CountingMethod::Sort, workers, 0};
  throw BudgetExceeded("sorting " + std::to_string(tuples) + " keys exceeds the memory budget");
}

template <typename Key>
i128 count_collisions(const std::vector<Key>& kc, int m, std::uint64_t tuples, u128 keyspace,
                      const MeanValueOptions& options) {
  const Plan plan = plan_counting<Key>(tuples, keyspace, options);
  const std::size_t N = kc.size();

  if (plan.method == CountingMethod::Hash) {
    std::vector<CountTable<Key>> tables;
    tables.reserve(plan.workers);
    for (unsigned w = 0; w < plan.workers; ++w) tables.emplace_back(plan.capacity);
    parallel_blocks(plan.workers, N, [&](unsigned w, std::size_t begin, std::size_t end) {
      auto& table = tables[w];
      auto sink = [&table](Key key) { table.add(key, 1); };
      enumerate_block(kc, m, begin, end, sink);
    });
    for (unsigned w = 1; w < plan.workers; ++w) tables[w].merge_into(tables[0]);
    return tables[0].sum_of_squares();
  }

  std::vector<Key> keys(static_cast<std::size_t>(tuples));
  const std::size_t per_leading = static_cast<std::size_t>(tuples / N);
  parallel_blocks(plan.workers, N, [&](unsigned, std::size_t begin, std::size_t end) {
    Key* out = keys.data() + begin * per_leading;
    auto sink = [&out](Key key) { *out++ = key; };
    enumerate_block(kc, m, begin, end, sink);
  });
  std::sort(keys.begin(), keys.end());
  i128 total = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i + 1;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    const i128 run = static_cast<i128>(j - i);
    total += run * run;
    i = j;
  }
  return total;
}

// When d >= m, equal power sums of orders 1..m force equal multisets (Newton's
// identities), so J counts pairs of rearrangements:
//   J = sum over multisets of size m of (m! / prod c_i!)^2.
// T[r] after n elements is that sum over multisets of size r from [1, n].
i128 rearrangement_count(std::int64_t N, int m) {
  std::vector<std::vector<i128>> binom(m + 1, std::vector<i128>(m + 1, 0));
  for (int r = 0; r <= m; ++r) {
    binom[r][0] = 1;
    for (int c = 1; c <= r; ++c) binom[r][c] = binom[r - 1][c - 1] + binom[r - 1][c];
  }
  std::vector<i128> T(m + 1, 0);
  T[0] = 1;
  for (std::int64_t n = 1; n <= N; ++n) {
    for (int r = m; r >= 1; --r) {
      i128 acc = T[r];
      for (int c = 1; c <= r; ++c)
        acc = checked_add(acc, checked_mul(T[r - c], checked_mul(binom[r][c], binom[r][c])));
      T[r] = acc;
    }
  }
  return T[m];
}

}  // namespace

MeanValueRecord mean_value_exact(std::int64_t N, int d, int m, const MeanValueOptions& options) {
  if (N < 1) throw InvalidArgument("N must be positive");
  if (d < 1) throw InvalidArgument("d must be positive");
  if (m < 1) throw InvalidArgument("m must be positive");

  MeanValueRecord rec{d, m, N, 0, 0.0};
  const int d_eff = std::min(d, m);  // orders above m add no constraint

  if (options.method == CountingMethod::Automatic && d >= m) {
    rec.J = rearrangement_count(N, m);
  } else {
    const i128 tuples128 = checked_pow(N, static_cast<unsigned>(m));
    if (tuples128 > static_cast<i128>(options.tuple_budget))
      throw BudgetExceeded("N^m = " + to_string(tuples128) + " tuples exceeds the tuple budget");
    const auto tuples = static_cast<std::uint64_t>(tuples128);

    // Radix R_j = m N^j + 1 holds any sum of m values k^j - 1 without carry.
    std::vector<i128> place(d_eff);
    i128 keyspace = 1;
    try {
      for (int j = 1; j <= d_eff; ++j) {
        place[j - 1] = keyspace;
        keyspace = checked_mul(keyspace, checked_add(checked_mul(m, checked_pow(N, j)), 1));
      }
    } catch (const IntegerOverflow&) {
      throw BudgetExceeded("power-sum key space exceeds 127 bits");
    }
    std::vector<i128> kc(static_cast<std::size_t>(N), 0);
    for (std::int64_t k = 1; k <= N; ++k) {
      i128 power = 1;
      for (int j = 0; j < d_eff; ++j) {
        power *= k;
        kc[k - 1] += (power - 1) * place[j];
      }
    }
    if (keyspace <= static_cast<i128>(UINT64_MAX)) {
      std::vector<std::uint64_t> keys(kc.begin(), kc.end());
      rec.J = count_collisions(keys, m, tuples, static_cast<u128>(keyspace), options);
    } else {
      std::vector<u128> keys(kc.begin(), kc.end());
      rec.J = count_collisions(keys, m, tuples, static_cast<u128>(keyspace), options);
    }
  }
  const long double logJ = std::log(static_cast<long double>(rec.J));
  const long double logN = std::log(static_cast<long double>(N));
  rec.norm = static_cast<double>(std::exp((logJ - 2.0L * m * logN) / (2.0L * m)));
  return rec;
}

}  // namespace radonlab
