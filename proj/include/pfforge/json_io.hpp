#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfforge/deflation.hpp"
#include "pfforge/domain.hpp"
#include "pfforge/perturbation.hpp"
#include "pfforge/pf_check.hpp"

namespace pfforge {

using Json = nlohmann::ordered_json;

// Every rational goes out as a "p/q" string so values survive bit-exactly.
// from_json functions throw Error(parse_error) on malformed input.

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const ComplexRational& z);
ComplexRational complex_from_json(const Json& j);

Json to_json(const CoeffSeq& c);
CoeffSeq coeff_seq_from_json(const Json& j);

Json to_json(const MinorSpec& spec);
MinorSpec minor_spec_from_json(const Json& j);

Json to_json(const PFVerdict& v);
PFVerdict verdict_from_json(const Json& j);

Json to_json(const SchoenbergCertificate& cert);

Json to_json(const PerturbationPlan& plan);
PerturbationPlan plan_from_json(const Json& j);

Json to_json(const MarginReport& report);

Json to_json(const DomainSpec& spec);
DomainSpec domain_from_json(const Json& j);

Json to_json(const ValidationReport& report);
ValidationReport validation_from_json(const Json& j);

Json to_json(const PoleSum& poles);
PoleSum pole_sum_from_json(const Json& j);

Json to_json(const TaylorCertificate& cert);
TaylorCertificate taylor_from_json(const Json& j);

Json to_json(const BlowupWitness& w);

Json to_json(const DeflationResult& d);
DeflationResult deflation_from_json(const Json& j);

Json to_json(const RadiusBracket& b);

Json to_json(const BoundaryLimitReport& rep);

// CSV tables with fixed headers.
void write_coeff_csv(std::ostream& out, const CoeffSeq& c);                   // k,coeff
void write_taylor_csv(std::ostream& out, const TaylorCertificate& cert);      // n,b_n
void write_limit_csv(std::ostream& out, const BoundaryLimitReport& rep);      // x,value
void write_blowup_csv(std::ostream& out, const BlowupWitness& w);             // alpha,lower_bound

}  // namespace pfforge
