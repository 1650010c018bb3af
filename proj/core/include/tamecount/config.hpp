#pragma once

#include <string>

#include "tamecount/counting.hpp"
#include "tamecount/curve.hpp"
#include "tamecount/higgs_p1.hpp"
#include "tamecount/ramification.hpp"

namespace tamecount {

// A JSON input document: curve, ramification data and the Higgs source.
struct ConfigDocument {
    CurveSpec curve;
    RamificationConfig ramification;
    HiggsSource higgs;
    HiggConvention higg_coeff = HiggConvention::Geom;
};

// Throws ValidationError whose where() is the JSON path of the bad item.
ConfigDocument parse_config(const std::string& json_text);
ConfigDocument load_config(const std::string& path);

}  // namespace tamecount
