#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relcomm/conditions.hpp"
#include "relcomm/freealg.hpp"

namespace relcomm {

// JSON documents are single-line so they can be streamed as NDJSON.

std::string report_to_json(const ConditionReport& r);
ConditionReport report_from_json(std::string_view text);

/// The suite summary line: reductions, noteworthy splits, x1c K-variant differential.
std::string suite_summary_to_json(const SuiteReport& s);

std::string chain_to_json(const TermChain& c);
TermChain chain_from_json(std::string_view text);

std::string refutation_to_json(const Refutation& r);
Refutation refutation_from_json(std::string_view text);

/// Accepts a TermChain document or a bare array of s-expressions. Returns
/// the terms, and the scheme when the document names one.
struct TermsDocument {
  std::vector<Term> terms;
  std::optional<Scheme> scheme;
};
TermsDocument parse_terms_document(std::string_view text);

std::string scheme_verdict_to_json(Scheme s, const SchemeVerdict& v);

std::string report_to_text(const ConditionReport& r);
std::string suite_summary_to_text(const SuiteReport& s);
std::string chain_to_text(const TermChain& c);
std::string refutation_to_text(const Refutation& r);
std::string scheme_verdict_to_text(Scheme s, const SchemeVerdict& v);

}  // namespace relcomm
