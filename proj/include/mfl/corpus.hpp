#pragma once

#include <set>
#include <string>
#include <vector>

#include "mfl/loop.hpp"

namespace mfl {

/// Standard small group tables, identity at index 0.
/// Recognized names: Z<n>, S3, D4, Q8, Z2xZ2, D4xZ2.
FiniteLoop small_group(const std::string& name);

FiniteLoop direct_product(const FiniteLoop& a, const FiniteLoop& b);

/// Chein double M(G,2) of a group G: order 2|G| on G u Gu with
///   g.h = gh, g.(hu) = (hg)u, (gu).h = (g h^-1)u, (gu).(hu) = h^-1 g.
/// Throws NotAssociative unless G is a group.  The result is verified Moufang
/// and is nonassociative exactly when G is nonabelian.
FiniteLoop chein_double(const FiniteLoop& g);

struct CorpusEntry {
    std::string name;
    FiniteLoop loop;
    std::set<std::string> tags; // group, moufang, nonassociative, p-loop:<p>, simple, nilpotent-expected
};

/// The fixed, versioned test corpus.  Tags are verified against computed
/// predicates the first time the corpus is built.
const std::vector<CorpusEntry>& corpus();

const CorpusEntry& corpus_entry(const std::string& name);

} // namespace mfl
