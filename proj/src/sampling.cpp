// Subset sampling and split assignment. Both stratify per mode and draw
// from pinned SplitMix64 streams so results depend only on (records,
// seed), never on iteration order or platform.

#include <algorithm>
#include <numeric>

#include "jazzpat/dataset.h"
#include "jazzpat/rng.h"

namespace jazzpat {

namespace {

/// Largest-remainder apportionment of `total` over weighted shares.
/// shares[i] = total * weights[i] / weightSum, rounded so the sum is
/// exact; remainder ties go to the lower index.
std::vector<std::int64_t> apportion(std::int64_t total, const std::vector<std::int64_t>& weights) {
  const std::int64_t weightSum = std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  std::vector<std::int64_t> shares(weights.size());
  std::vector<std::pair<std::int64_t, std::size_t>> remainders;  // (-numerator, index)
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const std::int64_t exact = total * weights[i];
    shares[i] = exact / weightSum;
    assigned += shares[i];
    remainders.push_back({-(exact % weightSum), i});
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::int64_t left = total - assigned; left > 0; --left)
    ++shares[remainders[static_cast<std::size_t>(total - assigned - left)].second];
  return shares;
}

}  // namespace

const std::vector<SubsetSpec>& subsetSpecs() {
  static const std::vector<SubsetSpec> specs = {
      {"small", 5876}, {"medium", 14688}, {"large", 36720}};
  return specs;
}

const SubsetSpec* findSubset(std::string_view name) {
  for (const auto& s : subsetSpecs())
    if (s.name == name)
      return &s;
  return nullptr;
}

std::vector<ManifestRecord> sampleSubset(const std::vector<ManifestRecord>& full,
                                         std::string_view size, std::uint64_t seed) {
  const SubsetSpec* spec = findSubset(size);
  if (!spec)
    throw InsufficientPopulation("unknown subset '" + std::string(size) + "'");

  // Group progression record indices per mode, canonical order intact.
  std::vector<std::string> modeOrder;
  std::map<std::string, std::vector<std::size_t>> byMode;
  for (std::size_t i = 0; i < full.size(); ++i) {
    if (full[i].type != PatternType::Progression)
      continue;
    auto [it, inserted] = byMode.try_emplace(full[i].mode);
    if (inserted)
      modeOrder.push_back(full[i].mode);
    it->second.push_back(i);
  }

  if (modeOrder.empty() && spec->progressions > 0)
    throw InsufficientPopulation("subset '" + std::string(size) + "' needs " +
                                 std::to_string(spec->progressions) +
                                 " progression records but the manifest has none");

  std::vector<std::int64_t> sizes;
  for (const auto& mode : modeOrder)
    sizes.push_back(static_cast<std::int64_t>(byMode[mode].size()));
  const auto quotas = apportion(spec->progressions, sizes);

  std::vector<bool> keep(full.size(), false);
  for (std::size_t i = 0; i < full.size(); ++i)
    if (full[i].type != PatternType::Progression)
      keep[i] = true;
  for (std::size_t m = 0; m < modeOrder.size(); ++m) {
    auto& indices = byMode[modeOrder[m]];
    const auto quota = static_cast<std::size_t>(quotas[m]);
    if (quota > indices.size())
      throw InsufficientPopulation("subset quota " + std::to_string(quota) + " exceeds " +
                                   std::to_string(indices.size()) + " records of mode " +
                                   modeOrder[m]);
    auto rng = streamFor(seed, modeOrder[m]);
    shuffle(indices, rng);
    for (std::size_t k = 0; k < quota; ++k)
      keep[indices[k]] = true;
  }

  std::vector<ManifestRecord> out;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (keep[i])
      out.push_back(full[i]);
  return out;
}

void assignSplits(std::vector<ManifestRecord>& records, std::uint64_t seed) {
  std::vector<std::string> strataOrder;
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto key =
        "split/" + std::string(patternTypeName(records[i].type)) + "/" + records[i].mode;
    auto [it, inserted] = strata.try_emplace(key);
    if (inserted)
      strataOrder.push_back(key);
    it->second.push_back(i);
  }
  for (const auto& key : strataOrder) {
    auto& indices = strata[key];
    const auto n = static_cast<std::int64_t>(indices.size());
    // 80/10/10 by largest remainder. Valid and test always carry equal
    // remainders; the pinned tie order puts valid first.
    std::int64_t train = n * 8 / 10;
    std::int64_t valid = n / 10;
    std::int64_t test = n / 10;
    std::int64_t left = n - train - valid - test;
    const std::int64_t remTrain = n * 8 % 10;
    const std::int64_t remValid = n % 10;
    std::vector<std::pair<std::int64_t, int>> order = {
        {-remTrain, 0}, {-remValid, 1}, {-remValid, 2}};
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [rem, which] : order) {
      if (left <= 0)
        break;
      --left;
      (which == 0 ? train : which == 1 ? valid : test) += 1;
    }
    auto rng = streamFor(seed, key);
    shuffle(indices, rng);
    for (std::int64_t k = 0; k < n; ++k) {
      const char* split = k < train ? "train" : k < train + valid ? "valid" : "test";
      records[indices[static_cast<std::size_t>(k)]].split = split;
    }
  }
}

}  // namespace jazzpat
