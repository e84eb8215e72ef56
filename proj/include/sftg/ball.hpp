#pragma once

// Finite windows of the right Cayley graph: vertices g, edges g -> g s.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sftg/group_model.hpp"
#include "sftg/words.hpp"

namespace sftg {

class Ball {
 public:
  static constexpr std::size_t exterior = static_cast<std::size_t>(-1);

  // Breadth-first from the identity; letters in the order s1, s1^-1, s2, ...
  // Throws ModelFailure when the backend fails on a word.
  Ball(ModelPtr model, std::size_t radius);
  Ball(ModelPtr model, const std::vector<Generator>& gens, std::size_t radius);

  const ModelPtr& model() const noexcept { return model_; }
  const GroupModel& group() const noexcept { return *model_; }
  std::size_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Word>& elements() const noexcept { return elements_; }
  const Word& element(std::size_t i) const { return elements_[i]; }
  std::size_t distance(std::size_t i) const { return distance_[i]; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  // Neighbor i . letters()[l], or exterior.
  std::size_t neighbor(std::size_t i, std::size_t l) const { return adjacency_[i][l]; }

  // Index of the element equal to w, if it lies in the ball.
  std::optional<std::size_t> find(const Word& w) const;
  // Index of i . w (w any word), if it lies in the ball.
  std::optional<std::size_t> product(std::size_t i, const Word& w) const;

 private:
  std::optional<std::size_t> find_normalized(const Word& nf, const std::string& key) const;
  void insert(Word nf, std::size_t distance);

  ModelPtr model_;
  std::size_t radius_;
  std::vector<Letter> letters_;
  std::vector<Word> elements_;
  std::vector<std::size_t> distance_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
};

// Elements at each distance 0..radius.
std::vector<std::size_t> sphere_sizes(const Ball& b);

}  // namespace sftg
