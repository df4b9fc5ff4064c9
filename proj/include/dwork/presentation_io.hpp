#pragma once

#include "dwork/cohomology.hpp"

#include <json.hpp>

namespace dwork {

inline constexpr const char* kPresentationFormat = "dwork-presentation";
inline constexpr int kPresentationVersion = 1;

nlohmann::json export_presentation(const QuotientPresentation& P);
QuotientPresentation import_presentation(const nlohmann::json& doc);

}  // namespace dwork
