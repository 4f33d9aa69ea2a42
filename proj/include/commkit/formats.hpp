#pragma once

#include "commkit/engel.hpp"
#include "commkit/lie.hpp"
#include "commkit/links.hpp"
#include "commkit/magnus.hpp"
#include "commkit/syntax.hpp"

#include <string>
#include <string_view>

namespace commkit {

// Link files:
//   # comment
//   n = 3
//   component l1 = [m2,m3]
//   component l2 = [m3,m1]
//   component l3 = [m2,m1]
LinkPresentation parse_link(std::string_view text);
LinkPresentation read_link_file(const std::string& path);
std::string write_link(const LinkPresentation& link, const std::string& comment = {});
std::string link_json(const LinkPresentation& link);

/// "23;1", "2,3;1" or "mu(23;1)".
MuIndex parse_mu_index(std::string_view text);

/// "1 ; ((1,1),(1,1))": one tree per Hopf component, leaves are multiplicities.
GbrSpec parse_gbr_spec(std::string_view text);

// Certificates:
//   rank 4
//   target x^-1 y^-1 x y ...
//   t1 a +1 [z, x y, x y, w]
std::string write_certificate(const EngelCertificate& cert, const Alphabet& alphabet);
EngelCertificate parse_certificate(std::string_view text);
std::string certificate_json(const EngelCertificate& cert, const Alphabet& alphabet);

std::string write_plan(const StabilizationResult& result, const Alphabet& alphabet);
std::string plan_json(const StabilizationResult& result, const Alphabet& alphabet);

std::string write_report(const QuotientReport& report);
std::string report_json(const QuotientReport& report);

template <SeriesKind Kind>
std::string series_json(const Series<Kind>& series);

/// "1^4 3^4" run-length form of a sorted factor list; "-" when empty.
std::string compact_factors(const std::vector<Integer>& factors);

/// "Z^2 + (Z/3)^4", "0" for the trivial group.
std::string describe_quotient(const std::vector<Integer>& invariant_factors, std::size_t free_rank);

}  // namespace commkit
