#include "sftg/ball.hpp"

#include "sftg/error.hpp"

namespace sftg {

Ball::Ball(ModelPtr model, std::size_t radius) : Ball(model, model->generators(), radius) {}

Ball::Ball(ModelPtr model, const std::vector<Generator>& gens, std::size_t radius)
    : model_(std::move(model)), radius_(radius) {
  for (const Generator& g : gens) {
    if (!model_->has_generator(g)) {
      throw Error(ErrorKind::UnknownGenerator, "'" + g.name() + "' is not a generator of " + model_->describe());
    }
    letters_.push_back({g, 1});
    letters_.push_back({g, -1});
  }
  insert(Word{}, 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t l = 0; l < letters_.size(); ++l) {
      const Word w = elements_[i] * Word(letters_[l].generator, letters_[l].sign);
      Word nf;
      std::string key;
      try {
        nf = model_->normal_form(w);
        key = model_->bucket_key(nf);
      } catch (const Error& e) {
        throw Error(ErrorKind::ModelFailure, "cannot normalize '" + w.to_string() + "': " + e.what());
      }
      if (auto found = find_normalized(nf, key)) {
        adjacency_[i][l] = *found;
      } else if (distance_[i] < radius_) {
        adjacency_[i][l] = elements_.size();
        insert(std::move(nf), distance_[i] + 1);
      }
    }
  }
}

void Ball::insert(Word nf, std::size_t distance) {
  buckets_[model_->bucket_key(nf)].push_back(elements_.size());
  elements_.push_back(std::move(nf));
  distance_.push_back(distance);
  adjacency_.emplace_back(letters_.size(), exterior);
}

std::optional<std::size_t> Ball::find_normalized(const Word& nf, const std::string& key) const {
  auto it = buckets_.find(key);
  if (it == buckets_.end()) return std::nullopt;
  for (std::size_t i : it->second) {
    if (model_->canonical() ? elements_[i] == nf : model_->equal(elements_[i], nf)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Ball::find(const Word& w) const {
  const Word nf = model_->normal_form(w);
  return find_normalized(nf, model_->bucket_key(nf));
}

std::optional<std::size_t> Ball::product(std::size_t i, const Word& w) const {
  // Follow edges while they stay inside; fall back to the model otherwise.
  std::size_t at = i;
  for (const Letter& l : w.letters()) {
    std::size_t col = exterior;
    for (std::size_t c = 0; c < letters_.size(); ++c) {
      if (letters_[c] == l) {
        col = c;
        break;
      }
    }
    if (col == exterior || adjacency_[at][col] == exterior) return find(elements_[i] * w);
    at = adjacency_[at][col];
  }
  return at;
}

std::vector<std::size_t> sphere_sizes(const Ball& b) {
  std::vector<std::size_t> out(b.radius() + 1, 0);
  for (std::size_t i = 0; i < b.size(); ++i) ++out[b.distance(i)];
  return out;
}

}  // namespace sftg
