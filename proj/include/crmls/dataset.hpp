#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace crmls {

enum class Polarity { kPositive, kNegative };

struct Review {
  std::string text;  // non-empty after trimming
  Polarity polarity = Polarity::kPositive;
};

struct Venue {
  std::string id;
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]
  std::map<std::string, int> categories;  // label -> count, counts > 0
  std::vector<Review> reviews;

  bool operator==(const Venue& other) const;
};

struct Rating {
  std::string user;
  std::string venue;
  int value = 0;  // 1..5

  bool operator==(const Rating& other) const = default;
};

// Ratings >= this value are positive feedback, the rest negative.
inline constexpr int kDefaultPositiveThreshold = 4;

// Immutable after construction; safe to share across threads.
class Dataset {
 public:
  // Validates and indexes the inputs. Venue index is file order; user index
  // is lexicographic over user ids. Throws DataError on duplicate ids,
  // duplicate (user, venue) ratings, values outside [1,5], coordinates out
  // of range, or ratings referencing unknown venues.
  static Dataset build(std::vector<Venue> venues, std::vector<Rating> ratings,
                       int positive_threshold = kDefaultPositiveThreshold);

  std::size_t n_users() const { return user_ids_.size(); }
  std::size_t n_venues() const { return venues_.size(); }

  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<Venue>& venues() const { return venues_; }
  const std::vector<Rating>& ratings() const { return ratings_; }
  int positive_threshold() const { return positive_threshold_; }

  // Index lookups throw DataError for unknown ids.
  std::size_t user_index(const std::string& user_id) const;
  std::size_t venue_index(const std::string& venue_id) const;
  bool has_user(const std::string& user_id) const;
  bool has_venue(const std::string& venue_id) const;

  // Venue indices with rating >= threshold (resp. < threshold), sorted.
  const std::vector<int>& positive_set(std::size_t user_index) const;
  const std::vector<int>& negative_set(std::size_t user_index) const;

  bool operator==(const Dataset& other) const;

 private:
  Dataset() = default;

  std::vector<Venue> venues_;
  std::vector<Rating> ratings_;
  std::vector<std::string> user_ids_;
  std::unordered_map<std::string, std::size_t> user_index_;
  std::unordered_map<std::string, std::size_t> venue_index_;
  std::vector<std::vector<int>> positive_sets_;
  std::vector<std::vector<int>> negative_sets_;
  int positive_threshold_ = kDefaultPositiveThreshold;
};

struct Split {
  std::vector<Rating> train;
  std::vector<Rating> validation;
  std::vector<Rating> test;
  std::uint64_t seed = 0;
};

// Uniform 70/10/20 partition by seeded shuffle. Validation and test sizes
// are floor(0.1 n) and floor(0.2 n); the remainder goes to train, so no
// part drifts by more than one rating. Throws DataError below 10 ratings.
Split split_dataset(const Dataset& dataset, std::uint64_t seed);

// Per-user relevant/irrelevant venue index sets derived from a rating
// subset (typically a train split). Users absent from the subset keep
// empty sets and contribute zero training loss.
struct PreferenceSets {
  std::size_t n_users = 0;
  std::size_t n_venues = 0;
  std::vector<std::vector<int>> positives;  // sorted venue indices
  std::vector<std::vector<int>> negatives;

  static PreferenceSets from_ratings(const Dataset& dataset,
                                     std::span<const Rating> ratings);
  static PreferenceSets from_dataset(const Dataset& dataset);
};

}  // namespace crmls
