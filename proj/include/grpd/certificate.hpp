#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "grpd/io.hpp"
#include "grpd/presentation.hpp"

// CERT v1: a presentation certificate as raw tables. The header block holds
// the stage, claimed cardinalities and the recorded verdicts; it is followed
// by the source groupoid and, for a complete presentation, the presented
// groupoid H, the group K, its action on H and the equivalence bibundle
// H ⋊ K -> G. Verification rebuilds H ⋊ K and rechecks everything from the
// tables.
namespace grpd::cert {

void write_certificate(std::ostream& os, const PresentationCertificate& c);
std::string certificate_text(const PresentationCertificate& c);

// Throws io::ParseError on a malformed certificate.
Transcript verify_certificate(const std::vector<io::Block>& blocks);
Transcript verify_file(const std::string& path);

}  // namespace grpd::cert
