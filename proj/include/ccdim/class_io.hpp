#pragma once

#include <string>

#include "ccdim/complexes.hpp"
#include "ccdim/concepts.hpp"

namespace ccdim {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Class file format:
// {"domain": ["x1","x2","x3"], "concepts": ["++-","+++","+-+","--+","-++"]}
// Duplicate concepts are rejected, not deduped. Parse errors carry position info.
ConceptClass class_from_json(const std::string& text);
ConceptClass class_from_file(const std::string& path);
std::string class_to_json(const ConceptClass& c);

// Complex export: vertices with rational "p/q" coordinates, faces as index lists.
std::string chain_complex_to_json(const ChainComplex& k);
std::string geo_complex_to_json(const GeoComplex& g);

// OFF export of a 3-dimensional geometric realization (|X| = 3 figures).
std::string geo_complex_to_off(const GeoComplex& g);

}  // namespace ccdim
