#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "nat/core/group_table.hpp"
#include "nat/errors.hpp"

namespace nat {

/// A map between two tabulated groups given on every source element.
struct Homomorphism {
  std::shared_ptr<const GroupTable> source;
  std::shared_ptr<const GroupTable> target;
  std::vector<Elem> images;

  Homomorphism(std::shared_ptr<const GroupTable> src,
               std::shared_ptr<const GroupTable> tgt, std::vector<Elem> img)
      : source(std::move(src)), target(std::move(tgt)), images(std::move(img)) {
    if (images.size() != source->size())
      throw InputError("homomorphism needs one image per source element");
    for (Elem y : images)
      if (y >= target->size())
        throw InputError("homomorphism image out of range");
  }

  Elem operator()(Elem x) const { return images[x]; }

  /// First (a, b) with image(ab) != image(a) image(b).
  std::optional<std::pair<Elem, Elem>> violation() const {
    for (Elem a = 0; a < source->size(); ++a)
      for (Elem b = 0; b < source->size(); ++b)
        if (images[source->mul(a, b)] != target->mul(images[a], images[b]))
          return std::pair{a, b};
    return std::nullopt;
  }

  std::vector<Elem> kernel() const {
    std::vector<Elem> k;
    for (Elem a = 0; a < source->size(); ++a)
      if (images[a] == 0)
        k.push_back(a);
    return k;
  }

  /// Sorted image set.
  std::vector<Elem> image() const {
    std::vector<bool> in(target->size(), false);
    for (Elem y : images)
      in[y] = true;
    std::vector<Elem> out;
    for (Elem y = 0; y < target->size(); ++y)
      if (in[y])
        out.push_back(y);
    return out;
  }

  bool injective() const { return kernel().size() == 1; }
};

} // namespace nat
