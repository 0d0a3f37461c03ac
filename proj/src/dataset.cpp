#include "crmls/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "crmls/errors.hpp"

namespace crmls {

bool Venue::operator==(const Venue& other) const {
  if (id != other.id || latitude != other.latitude ||
      longitude != other.longitude || categories != other.categories ||
      reviews.size() != other.reviews.size()) {
    return false;
  }
  for (std::size_t i = 0; i < reviews.size(); ++i) {
    if (reviews[i].text != other.reviews[i].text ||
        reviews[i].polarity != other.reviews[i].polarity) {
      return false;
    }
  }
  return true;
}

Dataset Dataset::build(std::vector<Venue> venues, std::vector<Rating> ratings,
                       int positive_threshold) {
  Dataset d;
  d.positive_threshold_ = positive_threshold;
  d.venues_ = std::move(venues);
  d.ratings_ = std::move(ratings);

  for (std::size_t j = 0; j < d.venues_.size(); ++j) {
    const Venue& v = d.venues_[j];
    if (v.id.empty()) {
      throw DataError("venue with empty id at index " + std::to_string(j));
    }
    if (!d.venue_index_.emplace(v.id, j).second) {
      throw DataError("duplicate venue id: " + v.id);
    }
    if (v.latitude < -90.0 || v.latitude > 90.0) {
      throw DataError("venue " + v.id + ": latitude out of [-90,90]: " +
                      std::to_string(v.latitude));
    }
    if (v.longitude < -180.0 || v.longitude > 180.0) {
      throw DataError("venue " + v.id + ": longitude out of [-180,180]: " +
                      std::to_string(v.longitude));
    }
    for (const auto& [label, count] : v.categories) {
      if (count <= 0) {
        throw DataError("venue " + v.id + ": category '" + label +
                        "' has non-positive count");
      }
    }
    for (const Review& r : v.reviews) {
      if (r.text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw DataError("venue " + v.id + ": review with empty text");
      }
    }
  }

  std::set<std::string> users;
  std::set<std::pair<std::string, std::string>> seen_pairs;
  for (const Rating& r : d.ratings_) {
    if (r.user.empty()) throw DataError("rating with empty user id");
    if (r.value < 1 || r.value > 5) {
      throw DataError("rating (" + r.user + ", " + r.venue +
                      ") out of [1,5]: " + std::to_string(r.value));
    }
    if (!d.venue_index_.contains(r.venue)) {
      throw DataError("rating references unknown venue: " + r.venue);
    }
    if (!seen_pairs.emplace(r.user, r.venue).second) {
      throw DataError("duplicate rating for (" + r.user + ", " + r.venue + ")");
    }
    users.insert(r.user);
  }

  d.user_ids_.assign(users.begin(), users.end());
  for (std::size_t i = 0; i < d.user_ids_.size(); ++i) {
    d.user_index_.emplace(d.user_ids_[i], i);
  }

  d.positive_sets_.resize(d.user_ids_.size());
  d.negative_sets_.resize(d.user_ids_.size());
  for (const Rating& r : d.ratings_) {
    const std::size_t ui = d.user_index_.at(r.user);
    const int vj = static_cast<int>(d.venue_index_.at(r.venue));
    if (r.value >= positive_threshold) {
      d.positive_sets_[ui].push_back(vj);
    } else {
      d.negative_sets_[ui].push_back(vj);
    }
  }
  for (auto& s : d.positive_sets_) std::sort(s.begin(), s.end());
  for (auto& s : d.negative_sets_) std::sort(s.begin(), s.end());
  return d;
}

std::size_t Dataset::user_index(const std::string& user_id) const {
  auto it = user_index_.find(user_id);
  if (it == user_index_.end()) throw DataError("unknown user: " + user_id);
  return it->second;
}

std::size_t Dataset::venue_index(const std::string& venue_id) const {
  auto it = venue_index_.find(venue_id);
  if (it == venue_index_.end()) throw DataError("unknown venue: " + venue_id);
  return it->second;
}

bool Dataset::has_user(const std::string& user_id) const {
  return user_index_.contains(user_id);
}

bool Dataset::has_venue(const std::string& venue_id) const {
  return venue_index_.contains(venue_id);
}

const std::vector<int>& Dataset::positive_set(std::size_t user_index) const {
  return positive_sets_.at(user_index);
}

const std::vector<int>& Dataset::negative_set(std::size_t user_index) const {
  return negative_sets_.at(user_index);
}

bool Dataset::operator==(const Dataset& other) const {
  return venues_ == other.venues_ && ratings_ == other.ratings_ &&
         positive_threshold_ == other.positive_threshold_;
}

Split split_dataset(const Dataset& dataset, std::uint64_t seed) {
  const std::size_t n = dataset.ratings().size();
  if (n < 10) {
    throw DataError("split requires at least 10 ratings, got " +
                    std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t n_valid = n / 10;
  const std::size_t n_test = n / 5;
  const std::size_t n_train = n - n_valid - n_test;

  Split s;
  s.seed = seed;
  s.train.reserve(n_train);
  s.validation.reserve(n_valid);
  s.test.reserve(n_test);
  for (std::size_t i = 0; i < n; ++i) {
    const Rating& r = dataset.ratings()[order[i]];
    if (i < n_train) {
      s.train.push_back(r);
    } else if (i < n_train + n_valid) {
      s.validation.push_back(r);
    } else {
      s.test.push_back(r);
    }
  }
  return s;
}

PreferenceSets PreferenceSets::from_ratings(const Dataset& dataset,
                                            std::span<const Rating> ratings) {
  PreferenceSets p;
  p.n_users = dataset.n_users();
  p.n_venues = dataset.n_venues();
  p.positives.resize(p.n_users);
  p.negatives.resize(p.n_users);
  for (const Rating& r : ratings) {
    const std::size_t ui = dataset.user_index(r.user);
    const int vj = static_cast<int>(dataset.venue_index(r.venue));
    if (r.value >= dataset.positive_threshold()) {
      p.positives[ui].push_back(vj);
    } else {
      p.negatives[ui].push_back(vj);
    }
  }
  for (auto& s : p.positives) std::sort(s.begin(), s.end());
  for (auto& s : p.negatives) std::sort(s.begin(), s.end());
  return p;
}

PreferenceSets PreferenceSets::from_dataset(const Dataset& dataset) {
  return from_ratings(dataset, dataset.ratings());
}

}  // namespace crmls
