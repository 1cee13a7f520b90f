#include "s3vmr/synth.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "s3vmr/error.hpp"
#include "s3vmr/rng.hpp"

namespace s3vmr {

namespace {

// Shared neutral vocabulary. Kept clear of every indicator list so that at
// noise = 0 the two classes are disjoint in the binary feature space.
const std::vector<std::string> kFiller = {
    "available", "tonight",  "call",     "today",   "city",    "downtown",
    "visit",     "hotel",    "private",  "photos",  "pics",    "real",
    "time",      "good",     "relax",    "upscale", "classy",  "friendly",
    "clean",     "safe",     "location", "near",    "open",    "late",
    "night",     "morning",  "evening",  "weekend", "special", "rate",
    "hour",      "gentlemen"};

// Extra vocabulary drawn mostly by the non-indicator class; its breadth
// pushes those documents over the entropy threshold.
const std::vector<std::string> kRichFiller = {
    "professional", "experience", "certified",  "studio",    "office",
    "music",        "lounge",     "dinner",     "travel",    "companion",
    "conversation", "culture",    "art",        "wine",      "coffee",
    "fitness",      "dance",      "reading",    "events",    "theater",
    "gallery",      "brunch",     "cocktails",  "rooftop",   "skyline",
    "boutique",     "luxury",     "penthouse",  "concierge", "reservations",
    "itinerary",    "weekday",    "afternoons", "bookings",  "referrals",
    "screening",    "etiquette",  "discretion", "elegance",  "sophistication"};

const std::vector<std::string> kCountryTokens = {
    "asian", "china", "chinese", "korean", "thai", "vietnamese"};
const std::vector<std::string> kSpaTokens = {"spa", "massage"};
const std::vector<std::string> kSweetTokens = {"sweet", "candy", "fresh"};
const std::vector<std::string> kVictimTokens = {"girls", "ladies", "twins", "sisters"};
const std::vector<std::string> kWebsiteTokens = {
    "www.citynights.com", "www.afterdark.net", "http://metrolist.org",
    "www.latenight.biz",  "http://uptown.info"};
const std::vector<std::string> kCities = {
    "phoenix", "dallas", "houston", "miami",  "atlanta",
    "denver",  "seattle", "chicago", "boston", "tampa"};

// Token mix injected by noise. A slice of positive-indicator tokens makes
// flag noise two-sided: indicator-free documents can gain flags, not just
// lose them.
std::string confusion_token(Rng& rng) {
  const double r = rng.unit();
  if (r < 0.08) return rng.pick(kCountryTokens);
  if (r < 0.12) return rng.pick(kSpaTokens);
  if (r < 0.16) return rng.pick(kSweetTokens);
  if (r < 0.20) return rng.pick(kVictimTokens);
  if (r < 0.60) return rng.pick(kFiller);
  return rng.pick(kRichFiller);
}

struct Doc {
  std::string title;
  std::string body;
};

// Indicator-bearing document: one of two modes firing different flag
// clusters so a handful of labels cannot cover every pattern.
Doc make_positive(Rng& rng) {
  std::vector<std::vector<std::string>> segments;
  const bool mode_a = rng.chance(0.5);
  if (mode_a) {
    segments.push_back({rng.pick(kCountryTokens)});
    segments.push_back({rng.pick(kSpaTokens)});
    if (rng.chance(0.7)) segments.push_back({rng.pick(kVictimTokens)});
    if (rng.chance(0.4)) segments.push_back({"two", rng.pick(kVictimTokens)});
  } else {
    segments.push_back({rng.pick(kSweetTokens)});
    if (rng.chance(0.6)) segments.push_back({"new", "in", "town"});
    if (rng.chance(0.3)) segments.push_back({"new", "to", "the", "game"});
    const std::array<const char*, 4> weights = {"98", "105", "108", "110"};
    if (rng.chance(0.7)) segments.push_back({weights[rng.below(4)], "lbs"});
    if (rng.chance(0.5)) segments.push_back({rng.pick(kVictimTokens)});
  }
  if (rng.chance(0.35)) segments.push_back({"she", "her"});
  if (rng.chance(0.35)) segments.push_back({"we", "our"});

  // Short filler tail from a narrow sub-pool keeps entropy low.
  const int tail = rng.range(6, 12);
  for (int i = 0; i < tail; ++i) segments.push_back({kFiller[rng.below(12)]});
  rng.shuffle(segments);

  Doc doc;
  doc.title = kFiller[rng.below(12)] + " " + kFiller[rng.below(12)];
  for (const auto& seg : segments)
    for (const auto& tok : seg) doc.body += (doc.body.empty() ? "" : " ") + tok;
  return doc;
}

// Indicator-free document: long, wide vocabulary, often a website link.
Doc make_negative(Rng& rng) {
  std::vector<std::string> toks;
  const int len = rng.range(26, 44);
  for (int i = 0; i < len; ++i)
    toks.push_back(rng.chance(0.45) ? rng.pick(kFiller) : rng.pick(kRichFiller));
  if (rng.chance(0.5)) toks.push_back(rng.pick(kWebsiteTokens));
  if (rng.chance(0.35)) {
    toks.push_back("i");
    toks.push_back("me");
  }
  rng.shuffle(toks);
  Doc doc;
  doc.title = rng.pick(kRichFiller) + " " + rng.pick(kFiller);
  for (const auto& tok : toks) doc.body += (doc.body.empty() ? "" : " ") + tok;
  return doc;
}

void apply_noise(Doc& doc, double noise, Rng& rng) {
  if (noise <= 0.0) return;
  std::string out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    if (!out.empty()) out += " ";
    out += rng.chance(noise) ? confusion_token(rng) : cur;
    cur.clear();
  };
  for (char c : doc.body) {
    if (c == ' ')
      flush();
    else
      cur.push_back(c);
  }
  flush();
  doc.body = out;
}

}  // namespace

SyntheticData generate_synthetic(int n_labeled, int n_unlabeled, double noise,
                                 std::uint32_t seed) {
  if (n_labeled < 4) throw Error("generate_synthetic: n_labeled must be >= 4");
  if (n_unlabeled < 0) throw Error("generate_synthetic: n_unlabeled must be >= 0");
  if (noise < 0.0 || noise >= 0.5)
    throw Error("generate_synthetic: noise must be in [0, 0.5)");

  Rng rng(seed);
  const int n = n_labeled + n_unlabeled;
  const int n_pos = n / 2;

  std::vector<int> truth(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) truth[static_cast<std::size_t>(i)] = i < n_pos ? 1 : -1;
  rng.shuffle(truth);

  SyntheticData data;
  data.truth = truth;
  data.ads.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Doc doc = truth[static_cast<std::size_t>(i)] > 0 ? make_positive(rng)
                                                     : make_negative(rng);
    apply_noise(doc, noise, rng);
    AdRecord ad;
    char idbuf[16];
    std::snprintf(idbuf, sizeof idbuf, "syn-%06d", i + 1);
    ad.id = idbuf;
    ad.title = std::move(doc.title);
    ad.body = std::move(doc.body);
    if (rng.chance(0.7))
      ad.age = truth[static_cast<std::size_t>(i)] > 0 ? rng.range(18, 24)
                                                      : rng.range(21, 36);
    if (rng.chance(0.8)) ad.location = rng.pick(kCities);
    data.ads.push_back(std::move(ad));
  }

  // Stratified labeled subset.
  std::vector<std::size_t> pos_idx, neg_idx;
  for (std::size_t i = 0; i < data.ads.size(); ++i)
    (truth[i] > 0 ? pos_idx : neg_idx).push_back(i);
  const std::size_t want_pos = static_cast<std::size_t>(n_labeled) / 2;
  const std::size_t want_neg = static_cast<std::size_t>(n_labeled) - want_pos;
  if (pos_idx.size() < want_pos || neg_idx.size() < want_neg)
    throw Error("generate_synthetic: class pool too small for labeled subset");
  rng.shuffle(pos_idx);
  rng.shuffle(neg_idx);
  std::vector<std::size_t> chosen(pos_idx.begin(), pos_idx.begin() + want_pos);
  chosen.insert(chosen.end(), neg_idx.begin(), neg_idx.begin() + want_neg);
  std::sort(chosen.begin(), chosen.end());
  for (auto i : chosen) data.labeled.emplace_back(data.ads[i].id, truth[i]);
  return data;
}

}  // namespace s3vmr
