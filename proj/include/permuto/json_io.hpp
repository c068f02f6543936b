#pragma once

#include <json.hpp>

#include "permuto/bidelta.hpp"
#include "permuto/chains.hpp"
#include "permuto/coend.hpp"
#include "permuto/ordered_partition.hpp"
#include "permuto/preoperad.hpp"
#include "permuto/tensoralg.hpp"

namespace permuto {

using nlohmann::json;

json to_json(const OrderedPartition& a);           // {"n":7,"blocks":[[2,3,5],[7,4,1],[6]]}
OrderedPartition partition_from_json(const json& j);

json to_json(const BasedInjection& phi);           // {"k":2,"l":3,"images":[1,3]}
BasedInjection injection_from_json(const json& j);

json to_json(const CoendClass& cls);               // {"cell":{"blocks":[...]},"labels":[...]}

json to_json(const ChainComplex& c);               // basis + sparse boundaries
json to_json(const HomologyResult& h);             // {"betti":[...],"torsion":[[...]]}
json to_json(const ShuffleCheckReport& r);
json to_json(const LadderReport& r);
json to_json(const TopCollapse& t);

json to_json(const SplitTensorElement& e);         // [{"left":[...],"right":[...],"coef":n}]
json to_json(const LieRankResult& r);

json to_json(const FreeProductWord& w);            // [{"component":1,"power":2},...]
FreeProductWord word_from_json(const json& j, int level);
json to_json(const TruncatedMagnusWord& p);
json to_json(const JHReport& r);
json to_json(const CompositeReport& r);
json to_json(const ExactnessReport& r);
json to_json(const MorphismReport& r);

}  // namespace permuto
