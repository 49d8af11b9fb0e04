#pragma once

#include <json.hpp>

#include <vector>

#include "horacirc/audit.hpp"
#include "horacirc/circulant.hpp"
#include "horacirc/quad_ext.hpp"
#include "horacirc/rational.hpp"

namespace horacirc {

using Json = nlohmann::ordered_json;

/// Rationals serialize as their canonical "n" or "n/d" string.
Json to_json(const Rational& x);
Rational rational_from_json(const Json& j);

/// {"u": "...", "v": "...", "D": int}
Json to_json(const QuadExt& x);
QuadExt quad_ext_from_json(const Json& j);

/// {"n": int, "first_row": ["...", ...]}
/// {"a","b","p","q"}; integers outside long range become strings.
Json to_json(const HoradamParams& params);
Json to_json(const Circulant& c);
Circulant circulant_from_json(const Json& j);

/// Array of rows of rational strings.
Json to_json(const DenseMatrix& m);

namespace audit {

/// {"case": {...}, "printed": v, "oracle": v, "match": bool,
///  "discrepancy": v, "skipped": string|null, "note": string|null,
///  "integrity": string|null}
Json to_json(const AuditReport& r);
Json to_json(const AuditSummary& s);
Json to_json(const CaseKey& k);

}  // namespace audit

}  // namespace horacirc
