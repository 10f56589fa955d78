// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// RDF serialization and parsing for the four supported formats, dump-file
// compression codecs, and HTTP Accept-header negotiation. All node servers,
// the sink, and the reference crawler speak through this module.
//
// The writers emit IRI-only documents (no literals, no blank nodes); the
// parsers accept the writers' own subset, which is a documented conformance
// limitation: the harness controls both ends of every exchange.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crawlbench/model.hpp"

namespace crawlbench {

/// Parse failure; `offset` is the byte position the parser gave up at.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Serializes triples in the given format. Documents always end with a
/// trailing newline (empty input yields an empty document). N3 output is the
/// Turtle serialization, which is a valid N3 subset.
std::string serialize(const std::vector<Triple>& triples, RdfFormatKind format);

/// Parses a document, returning triples in document order (duplicates kept).
/// Throws ParseError on malformed input.
std::vector<Triple> parse(const std::string& bytes, RdfFormatKind format);

/// Compression codecs. Zip archives contain exactly one entry named
/// `dump{ext}` where ext is the RDF format extension of the payload.
std::string compress(const std::string& bytes, Compression c,
                     const std::string& entry_extension = ".ttl");
std::string decompress(const std::string& bytes, Compression c);

/// Media type reported for a dump file body with the given compression.
std::string dump_content_type(RdfFormatKind format, Compression c);

/// Outcome of Accept-header negotiation: a format, or 406 upstream.
struct Negotiated {
  std::optional<RdfFormatKind> format;  // nullopt = NotAcceptable
  bool acceptable() const { return format.has_value(); }
};

/// Chooses the response format for an Accept header. Highest q wins; ties
/// break by server preference Turtle > NTriples > RdfXml > N3. An absent
/// header negotiates to Turtle. No supported type with q > 0 -> NotAcceptable.
Negotiated negotiate(const std::optional<std::string>& accept_header);

/// Maps a Content-Type value (parameters ignored) to a supported format.
std::optional<RdfFormatKind> format_for_media_type(const std::string& media_type);

/// Splits "name.ttl.gz" style suffixes: returns (format, compression) when the
/// path ends with a known RDF extension optionally followed by a codec
/// extension.
std::optional<std::pair<RdfFormatKind, Compression>> classify_dump_path(
    const std::string& path);

}  // namespace crawlbench
