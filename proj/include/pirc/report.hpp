#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pirc/bounds.hpp"
#include "pirc/constructions.hpp"
#include "pirc/designs.hpp"
#include "pirc/hamming.hpp"
#include "pirc/recovery.hpp"
#include "pirc/searchlab.hpp"

namespace pirc::report {

// Key order is fixed, so dumps are byte-stable.
using Json = nlohmann::ordered_json;

Json positions(PositionSet s);
Json family(const RecoveryFamily& f);
Json families(const std::vector<RecoveryFamily>& fs);
Json triple(const std::array<PositionSet, 3>& t);
Json code(const Code& c);
Json matrix(const BitMatrix& m);
Json encoder(const Encoder& e);

Json verification(const VerificationReport& r);
Json constructed(const ConstructedCode& c, const VerificationReport& check);
Json mindist(const MinDistCheck& m, std::size_t t, std::size_t mu);
Json design(const PackingDesign& d);
Json packing_search(const PackingSearch& s, int v, int blocksize, int target);
Json complement(const ComplementCheck& c);
Json hamming_verdict(const HammingVerdict& v);
Json claims(int r, const std::vector<std::pair<std::array<PositionSet, 3>, ClaimReport>>& checked);
Json a2(const A2Entry& e);
Json bound(const BoundReport& b);
Json optimal_table(std::size_t t, const std::vector<BoundReport>& exact,
                   const std::vector<std::pair<std::size_t, std::size_t>>& linear);
Json encoder_search(const EncoderSearch& s);
Json code_search(const CodeSearchOptions& o, const CodeSearchResult& r);
Json hunt(const HuntReport& h);

// Indented "key: value" rendering of a report for terminals.
void write_text(std::ostream& out, const Json& j);

}  // namespace pirc::report
