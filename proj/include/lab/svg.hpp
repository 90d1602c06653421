#ifndef LAB_SVG_HPP
#define LAB_SVG_HPP

#include <string>

#include <json.hpp>

namespace lab {

/// Renders a result document to SVG 1.1 on a fixed 800x600 canvas with tight
/// data bounds padded by 5%.  Kind selects the plot style:
///   kronecker, density  -> running-density polyline (annotated when empty)
///   bound-sweep         -> scatter of log(bound / |product|) vs sigma
///   pipeline            -> err_a scatter, aligned taus vs random taus
///   remark-demo         -> the three sup curves vs tau
/// Throws MalformedResult for documents without a plottable series (eval,
/// zeros) or with a missing/mangled schema.
std::string svg_for_result(const nlohmann::json& result);

}  // namespace lab

#endif
