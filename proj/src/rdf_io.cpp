// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "crawlbench/rdf_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <map>
#include <unordered_map>

// bzlib one-shot API. The runtime library ships without development headers
// in some environments, so the two prototypes are declared here; the ABI has
// been stable since bzip2 1.0.
extern "C" {
int BZ2_bzBuffToBuffCompress(char* dest, unsigned int* destLen, char* source,
                             unsigned int sourceLen, int blockSize100k,
                             int verbosity, int workFactor);
int BZ2_bzBuffToBuffDecompress(char* dest, unsigned int* destLen, char* source,
                               unsigned int sourceLen, int small,
                               int verbosity);
}

namespace crawlbench {

namespace {

constexpr char kRdfNs[] = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";

// ---------------------------------------------------------------------------
// N-Triples / Turtle

void append_nt_line(std::string& out, const Triple& t) {
  out += canonical_line(t);
  out += '\n';
}

std::string serialize_ntriples(const std::vector<Triple>& triples) {
  std::string out;
  for (const auto& t : triples) append_nt_line(out, t);
  return out;
}

// Turtle output groups triples by subject in first-appearance order.
std::string serialize_turtle(const std::vector<Triple>& triples) {
  std::vector<std::string> subject_order;
  std::unordered_map<std::string, std::vector<const Triple*>> by_subject;
  for (const auto& t : triples) {
    auto [it, inserted] = by_subject.try_emplace(t.subject);
    if (inserted) subject_order.push_back(t.subject);
    it->second.push_back(&t);
  }
  std::string out;
  for (const auto& subject : subject_order) {
    const auto& list = by_subject[subject];
    out += '<';
    out += subject;
    out += "> ";
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i > 0) out += " ;\n    ";
      out += '<';
      out += list[i]->predicate;
      out += "> <";
      out += list[i]->object;
      out += '>';
    }
    out += " .\n";
  }
  return out;
}

struct Token {
  enum Kind { Iri, Dot, Semicolon, Comma, End } kind;
  std::string value;
  std::size_t offset;
};

class TurtleLexer {
 public:
  explicit TurtleLexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Token::End, "", start};
    const char c = text_[pos_];
    if (c == '.') {
      ++pos_;
      return {Token::Dot, ".", start};
    }
    if (c == ';') {
      ++pos_;
      return {Token::Semicolon, ";", start};
    }
    if (c == ',') {
      ++pos_;
      return {Token::Comma, ",", start};
    }
    if (c == '<') {
      const std::size_t close = text_.find('>', pos_ + 1);
      if (close == std::string::npos) {
        throw ParseError("unterminated IRI", start);
      }
      Token token{Token::Iri, text_.substr(pos_ + 1, close - pos_ - 1), start};
      pos_ = close + 1;
      return token;
    }
    if (c == '@') {
      throw ParseError("unsupported directive", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", start);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::vector<Triple> parse_turtle(const std::string& text) {
  TurtleLexer lexer(text);
  std::vector<Triple> triples;
  Token token = lexer.next();
  while (token.kind != Token::End) {
    if (token.kind != Token::Iri) {
      throw ParseError("expected subject IRI", token.offset);
    }
    const std::string subject = token.value;
    bool statement_done = false;
    while (!statement_done) {
      Token pred = lexer.next();
      if (pred.kind == Token::Dot) break;  // trailing ';' before '.'
      if (pred.kind != Token::Iri) {
        throw ParseError("expected predicate IRI", pred.offset);
      }
      while (true) {
        Token obj = lexer.next();
        if (obj.kind != Token::Iri) {
          throw ParseError("expected object IRI", obj.offset);
        }
        triples.push_back({subject, pred.value, obj.value});
        Token sep = lexer.next();
        if (sep.kind == Token::Comma) continue;
        if (sep.kind == Token::Semicolon) break;
        if (sep.kind == Token::Dot) {
          statement_done = true;
          break;
        }
        throw ParseError("expected '.', ';' or ','", sep.offset);
      }
    }
    token = lexer.next();
  }
  return triples;
}

// Strict line-based N-Triples: every statement is `<s> <p> <o> .` on one line.
std::vector<Triple> parse_ntriples(const std::string& text) {
  std::vector<Triple> triples;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string::npos) line_end = text.size();
    const std::string line = text.substr(line_start, line_end - line_start);
    std::size_t i = 0;
    const auto skip_ws = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    };
    skip_ws();
    if (i < line.size() && line[i] != '#') {
      Triple t;
      for (std::string* field : {&t.subject, &t.predicate, &t.object}) {
        skip_ws();
        if (i >= line.size() || line[i] != '<') {
          throw ParseError("expected IRI", line_start + i);
        }
        const std::size_t close = line.find('>', i + 1);
        if (close == std::string::npos) {
          throw ParseError("unterminated IRI", line_start + i);
        }
        *field = line.substr(i + 1, close - i - 1);
        i = close + 1;
      }
      skip_ws();
      if (i >= line.size() || line[i] != '.') {
        throw ParseError("expected '.'", line_start + i);
      }
      ++i;
      skip_ws();
      if (i < line.size() && line[i] != '#') {
        throw ParseError("trailing characters after statement", line_start + i);
      }
      triples.push_back(std::move(t));
    }
    line_start = line_end + 1;
  }
  return triples;
}

// ---------------------------------------------------------------------------
// RDF/XML

std::string xml_escape(const std::string& value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Splits a predicate IRI into (namespace, XML local name).
std::pair<std::string, std::string> split_predicate(const std::string& iri) {
  const std::size_t pos = iri.find_last_of("#/");
  if (pos == std::string::npos || pos + 1 >= iri.size()) {
    throw std::invalid_argument("predicate IRI has no XML-safe local name: " + iri);
  }
  return {iri.substr(0, pos + 1), iri.substr(pos + 1)};
}

std::string serialize_rdfxml(const std::vector<Triple>& triples) {
  // Namespace prefixes in first-appearance order.
  std::vector<std::string> ns_order;
  std::map<std::string, std::string> ns_prefix;
  for (const auto& t : triples) {
    const auto [ns, local] = split_predicate(t.predicate);
    (void)local;
    if (ns_prefix.emplace(ns, "n" + std::to_string(ns_order.size())).second) {
      ns_order.push_back(ns);
    }
  }

  std::vector<std::string> subject_order;
  std::unordered_map<std::string, std::vector<const Triple*>> by_subject;
  for (const auto& t : triples) {
    auto [it, inserted] = by_subject.try_emplace(t.subject);
    if (inserted) subject_order.push_back(t.subject);
    it->second.push_back(&t);
  }

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<rdf:RDF xmlns:rdf=\"";
  out += kRdfNs;
  out += '"';
  for (const auto& ns : ns_order) {
    out += " xmlns:" + ns_prefix[ns] + "=\"" + xml_escape(ns) + "\"";
  }
  out += ">\n";
  for (const auto& subject : subject_order) {
    out += "  <rdf:Description rdf:about=\"" + xml_escape(subject) + "\">\n";
    for (const Triple* t : by_subject[subject]) {
      const auto [ns, local] = split_predicate(t->predicate);
      out += "    <" + ns_prefix[ns] + ":" + local + " rdf:resource=\"" +
             xml_escape(t->object) + "\"/>\n";
    }
    out += "  </rdf:Description>\n";
  }
  out += "</rdf:RDF>\n";
  return out;
}

std::string xml_unescape(const std::string& value, std::size_t offset) {
  std::string out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] != '&') {
      out += value[i];
      continue;
    }
    const std::size_t end = value.find(';', i);
    if (end == std::string::npos) throw ParseError("bad entity", offset + i);
    const std::string name = value.substr(i + 1, end - i - 1);
    if (name == "amp") out += '&';
    else if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "quot") out += '"';
    else if (name == "apos") out += '\'';
    else if (!name.empty() && name[0] == '#') {
      const int base = (name.size() > 1 && (name[1] == 'x' || name[1] == 'X')) ? 16 : 10;
      const std::string digits = base == 16 ? name.substr(2) : name.substr(1);
      out += static_cast<char>(std::stoul(digits, nullptr, base));
    } else {
      throw ParseError("unknown entity &" + name + ";", offset + i);
    }
    i = end;
  }
  return out;
}

struct XmlTag {
  std::string name;                         // qualified, e.g. "rdf:Description"
  std::vector<std::pair<std::string, std::string>> attrs;
  bool closing = false;                     // </name>
  bool self_closing = false;                // <name/>
  std::size_t offset = 0;
};

class XmlScanner {
 public:
  explicit XmlScanner(const std::string& text) : text_(text) {}

  // Returns the next element tag, skipping prolog, comments and text content.
  std::optional<XmlTag> next_tag() {
    while (true) {
      const std::size_t lt = text_.find('<', pos_);
      if (lt == std::string::npos) {
        pos_ = text_.size();
        return std::nullopt;
      }
      pos_ = lt;
      if (text_.compare(pos_, 4, "<!--") == 0) {
        const std::size_t end = text_.find("-->", pos_);
        if (end == std::string::npos) throw ParseError("unterminated comment", pos_);
        pos_ = end + 3;
        continue;
      }
      if (text_.compare(pos_, 2, "<?") == 0) {
        const std::size_t end = text_.find("?>", pos_);
        if (end == std::string::npos) throw ParseError("unterminated processing instruction", pos_);
        pos_ = end + 2;
        continue;
      }
      return parse_tag();
    }
  }

 private:
  XmlTag parse_tag() {
    XmlTag tag;
    tag.offset = pos_;
    ++pos_;  // '<'
    if (pos_ < text_.size() && text_[pos_] == '/') {
      tag.closing = true;
      ++pos_;
    }
    tag.name = read_name();
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("unterminated tag", tag.offset);
      if (text_[pos_] == '>') {
        ++pos_;
        return tag;
      }
      if (text_[pos_] == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        tag.self_closing = true;
        pos_ += 2;
        return tag;
      }
      const std::size_t attr_offset = pos_;
      const std::string attr_name = read_name();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '=') {
        throw ParseError("expected '=' in attribute", attr_offset);
      }
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
        throw ParseError("expected quoted attribute value", pos_);
      }
      const char quote = text_[pos_];
      const std::size_t close = text_.find(quote, pos_ + 1);
      if (close == std::string::npos) {
        throw ParseError("unterminated attribute value", pos_);
      }
      tag.attrs.emplace_back(
          attr_name, xml_unescape(text_.substr(pos_ + 1, close - pos_ - 1), pos_ + 1));
      pos_ = close + 1;
    }
  }

  std::string read_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == ':' || text_[pos_] == '_' || text_[pos_] == '-' ||
            text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected XML name", start);
    return text_.substr(start, pos_ - start);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

class RdfXmlParser {
 public:
  explicit RdfXmlParser(const std::string& text) : scanner_(text) {}

  std::vector<Triple> run() {
    auto root = scanner_.next_tag();
    if (!root || root->closing) throw ParseError("expected rdf:RDF root", 0);
    collect_namespaces(*root);
    if (expand(root->name, root->offset) != std::string(kRdfNs) + "RDF") {
      throw ParseError("root element is not rdf:RDF", root->offset);
    }
    if (!root->self_closing) {
      while (true) {
        auto tag = scanner_.next_tag();
        if (!tag) throw ParseError("unterminated rdf:RDF", 0);
        if (tag->closing) break;  // </rdf:RDF>
        parse_description(*tag);
      }
    }
    return std::move(triples_);
  }

 private:
  void collect_namespaces(const XmlTag& tag) {
    for (const auto& [name, value] : tag.attrs) {
      if (name.rfind("xmlns:", 0) == 0) {
        namespaces_[name.substr(6)] = value;
      } else if (name == "xmlns") {
        namespaces_[""] = value;
      }
    }
  }

  std::string expand(const std::string& qualified, std::size_t offset) const {
    const std::size_t colon = qualified.find(':');
    const std::string prefix = colon == std::string::npos ? "" : qualified.substr(0, colon);
    const std::string local = colon == std::string::npos ? qualified : qualified.substr(colon + 1);
    const auto it = namespaces_.find(prefix);
    if (it == namespaces_.end()) {
      throw ParseError("undeclared namespace prefix '" + prefix + "'", offset);
    }
    return it->second + local;
  }

  static std::optional<std::string> find_attr(const XmlTag& tag, const std::string& name) {
    for (const auto& [attr, value] : tag.attrs) {
      if (attr == name) return value;
    }
    return std::nullopt;
  }

  std::string rdf_attr(const XmlTag& tag, const std::string& local) const {
    for (const auto& [attr, value] : tag.attrs) {
      const std::size_t colon = attr.find(':');
      if (colon == std::string::npos) continue;
      const auto ns = namespaces_.find(attr.substr(0, colon));
      if (ns != namespaces_.end() && ns->second == kRdfNs &&
          attr.substr(colon + 1) == local) {
        return value;
      }
    }
    return "";
  }

  // Parses an rdf:Description element (open tag already consumed); returns
  // its rdf:about IRI.
  std::string parse_description(const XmlTag& open) {
    collect_namespaces(open);
    if (expand(open.name, open.offset) != std::string(kRdfNs) + "Description") {
      throw ParseError("expected rdf:Description", open.offset);
    }
    const std::string about = rdf_attr(open, "about");
    if (about.empty()) throw ParseError("rdf:Description without rdf:about", open.offset);
    if (open.self_closing) return about;
    while (true) {
      auto tag = scanner_.next_tag();
      if (!tag) throw ParseError("unterminated rdf:Description", open.offset);
      if (tag->closing) break;
      parse_property(about, *tag);
    }
    return about;
  }

  void parse_property(const std::string& subject, const XmlTag& open) {
    collect_namespaces(open);
    const std::string predicate = expand(open.name, open.offset);
    const std::string resource = rdf_attr(open, "resource");
    if (!resource.empty()) {
      triples_.push_back({subject, predicate, resource});
      if (!open.self_closing) consume_until_close();
      return;
    }
    if (open.self_closing) {
      throw ParseError("property element without rdf:resource", open.offset);
    }
    // Nested description form.
    auto inner = scanner_.next_tag();
    if (!inner || inner->closing) {
      throw ParseError("property element without object", open.offset);
    }
    const std::string object = parse_description(*inner);
    triples_.push_back({subject, predicate, object});
    auto close = scanner_.next_tag();
    if (!close || !close->closing) {
      throw ParseError("expected property close tag", open.offset);
    }
  }

  void consume_until_close() {
    int depth = 1;
    while (depth > 0) {
      auto tag = scanner_.next_tag();
      if (!tag) throw ParseError("unterminated element", 0);
      if (tag->closing) --depth;
      else if (!tag->self_closing) ++depth;
    }
  }

  XmlScanner scanner_;
  std::map<std::string, std::string> namespaces_;
  std::vector<Triple> triples_;
};

// ---------------------------------------------------------------------------
// Codecs

std::string zlib_deflate(const std::string& input, int window_bits) {
  z_stream stream{};
  if (deflateInit2(&stream, 6, Z_DEFLATED, window_bits, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("deflateInit2 failed");
  }
  std::string out;
  out.resize(deflateBound(&stream, static_cast<uLong>(input.size())));
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(input.data()));
  stream.avail_in = static_cast<uInt>(input.size());
  stream.next_out = reinterpret_cast<Bytef*>(out.data());
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = ::deflate(&stream, Z_FINISH);
  deflateEnd(&stream);
  if (rc != Z_STREAM_END) throw std::runtime_error("deflate failed");
  out.resize(stream.total_out);
  return out;
}

std::string zlib_inflate(const std::string& input, int window_bits) {
  z_stream stream{};
  if (inflateInit2(&stream, window_bits) != Z_OK) {
    throw std::runtime_error("inflateInit2 failed");
  }
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(input.data()));
  stream.avail_in = static_cast<uInt>(input.size());
  std::string out;
  std::string buffer(64 * 1024, '\0');
  int rc = Z_OK;
  do {
    stream.next_out = reinterpret_cast<Bytef*>(buffer.data());
    stream.avail_out = static_cast<uInt>(buffer.size());
    rc = ::inflate(&stream, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END && rc != Z_BUF_ERROR) {
      inflateEnd(&stream);
      throw std::runtime_error("corrupt compressed stream");
    }
    out.append(buffer.data(), buffer.size() - stream.avail_out);
    if (rc == Z_BUF_ERROR && stream.avail_in == 0) break;
  } while (rc != Z_STREAM_END);
  inflateEnd(&stream);
  if (rc != Z_STREAM_END) throw std::runtime_error("truncated compressed stream");
  return out;
}

std::string bzip2_compress(const std::string& input) {
  unsigned int dest_len =
      static_cast<unsigned int>(input.size() + input.size() / 100 + 600);
  std::string out(dest_len, '\0');
  const int rc = BZ2_bzBuffToBuffCompress(
      out.data(), &dest_len, const_cast<char*>(input.data()),
      static_cast<unsigned int>(input.size()), 9, 0, 0);
  if (rc != 0) throw std::runtime_error("bzip2 compression failed");
  out.resize(dest_len);
  return out;
}

std::string bzip2_decompress(const std::string& input) {
  std::size_t capacity = std::max<std::size_t>(input.size() * 4, 64 * 1024);
  // BZ_OUTBUFF_FULL = -8: grow and retry.
  while (true) {
    std::string out(capacity, '\0');
    unsigned int dest_len = static_cast<unsigned int>(capacity);
    const int rc = BZ2_bzBuffToBuffDecompress(
        out.data(), &dest_len, const_cast<char*>(input.data()),
        static_cast<unsigned int>(input.size()), 0, 0);
    if (rc == 0) {
      out.resize(dest_len);
      return out;
    }
    if (rc != -8) throw std::runtime_error("corrupt bzip2 stream");
    capacity *= 2;
  }
}

void put_u16(std::string& out, std::uint16_t v) {
  out += static_cast<char>(v & 0xff);
  out += static_cast<char>((v >> 8) & 0xff);
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint16_t get_u16(const std::string& data, std::size_t pos) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(data[pos]) |
                                    (static_cast<unsigned char>(data[pos + 1]) << 8));
}

std::uint32_t get_u32(const std::string& data, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | static_cast<unsigned char>(data[pos + i]);
  }
  return v;
}

// Single-entry ZIP archive, deflate method, fixed 1980-01-01 timestamp.
std::string zip_compress(const std::string& input, const std::string& entry_name) {
  const std::string deflated = zlib_deflate(input, -15);
  const auto crc = static_cast<std::uint32_t>(
      crc32(0, reinterpret_cast<const Bytef*>(input.data()),
            static_cast<uInt>(input.size())));

  std::string out;
  // Local file header.
  put_u32(out, 0x04034b50);
  put_u16(out, 20);      // version needed
  put_u16(out, 0);       // flags
  put_u16(out, 8);       // method: deflate
  put_u16(out, 0);       // mod time
  put_u16(out, 0x0021);  // mod date (1980-01-01)
  put_u32(out, crc);
  put_u32(out, static_cast<std::uint32_t>(deflated.size()));
  put_u32(out, static_cast<std::uint32_t>(input.size()));
  put_u16(out, static_cast<std::uint16_t>(entry_name.size()));
  put_u16(out, 0);  // extra length
  out += entry_name;
  out += deflated;

  const std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
  // Central directory.
  put_u32(out, 0x02014b50);
  put_u16(out, 20);  // version made by
  put_u16(out, 20);  // version needed
  put_u16(out, 0);
  put_u16(out, 8);
  put_u16(out, 0);
  put_u16(out, 0x0021);
  put_u32(out, crc);
  put_u32(out, static_cast<std::uint32_t>(deflated.size()));
  put_u32(out, static_cast<std::uint32_t>(input.size()));
  put_u16(out, static_cast<std::uint16_t>(entry_name.size()));
  put_u16(out, 0);  // extra
  put_u16(out, 0);  // comment
  put_u16(out, 0);  // disk number
  put_u16(out, 0);  // internal attrs
  put_u32(out, 0);  // external attrs
  put_u32(out, 0);  // local header offset
  out += entry_name;
  const std::uint32_t cd_size = static_cast<std::uint32_t>(out.size()) - cd_offset;

  // End of central directory.
  put_u32(out, 0x06054b50);
  put_u16(out, 0);
  put_u16(out, 0);
  put_u16(out, 1);
  put_u16(out, 1);
  put_u32(out, cd_size);
  put_u32(out, cd_offset);
  put_u16(out, 0);
  return out;
}

std::string zip_decompress(const std::string& input) {
  // Locate the end-of-central-directory record from the back.
  if (input.size() < 22) throw std::runtime_error("corrupt zip: too short");
  std::size_t eocd = std::string::npos;
  const std::size_t scan_start = input.size() >= 22 + 65535 ? input.size() - 22 - 65535 : 0;
  for (std::size_t i = input.size() - 22 + 1; i-- > scan_start;) {
    if (get_u32(input, i) == 0x06054b50) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string::npos) throw std::runtime_error("corrupt zip: no end record");
  const std::uint16_t entries = get_u16(input, eocd + 10);
  if (entries != 1) throw std::runtime_error("zip must contain exactly one entry");
  const std::uint32_t cd_offset = get_u32(input, eocd + 16);
  if (cd_offset + 46 > input.size() || get_u32(input, cd_offset) != 0x02014b50) {
    throw std::runtime_error("corrupt zip: bad central directory");
  }
  const std::uint16_t method = get_u16(input, cd_offset + 10);
  const std::uint32_t crc = get_u32(input, cd_offset + 16);
  const std::uint32_t csize = get_u32(input, cd_offset + 20);
  const std::uint32_t usize = get_u32(input, cd_offset + 24);
  const std::uint32_t local_offset = get_u32(input, cd_offset + 42);

  if (local_offset + 30 > input.size() || get_u32(input, local_offset) != 0x04034b50) {
    throw std::runtime_error("corrupt zip: bad local header");
  }
  const std::uint16_t name_len = get_u16(input, local_offset + 26);
  const std::uint16_t extra_len = get_u16(input, local_offset + 28);
  const std::size_t data_start = local_offset + 30 + name_len + extra_len;
  if (data_start + csize > input.size()) {
    throw std::runtime_error("corrupt zip: truncated data");
  }
  const std::string payload = input.substr(data_start, csize);

  std::string result;
  if (method == 8) {
    result = zlib_inflate(payload, -15);
  } else if (method == 0) {
    result = payload;
  } else {
    throw std::runtime_error("unsupported zip method");
  }
  if (result.size() != usize ||
      crc != static_cast<std::uint32_t>(
                 crc32(0, reinterpret_cast<const Bytef*>(result.data()),
                       static_cast<uInt>(result.size())))) {
    throw std::runtime_error("corrupt zip: checksum mismatch");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Content negotiation

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

struct AcceptEntry {
  std::string type;
  std::string subtype;
  double q = 1.0;
};

std::vector<AcceptEntry> parse_accept(const std::string& header) {
  std::vector<AcceptEntry> entries;
  std::size_t pos = 0;
  while (pos <= header.size()) {
    std::size_t comma = header.find(',', pos);
    if (comma == std::string::npos) comma = header.size();
    const std::string raw = trim(header.substr(pos, comma - pos));
    pos = comma + 1;
    if (raw.empty()) continue;

    AcceptEntry entry;
    std::size_t semi = raw.find(';');
    const std::string range = to_lower(trim(raw.substr(0, semi)));
    const std::size_t slash = range.find('/');
    if (slash == std::string::npos) continue;  // ignore malformed ranges
    entry.type = range.substr(0, slash);
    entry.subtype = range.substr(slash + 1);

    while (semi != std::string::npos) {
      const std::size_t next = raw.find(';', semi + 1);
      const std::string param = trim(raw.substr(semi + 1, next - semi - 1));
      semi = next;
      const std::size_t eq = param.find('=');
      if (eq == std::string::npos) continue;
      if (to_lower(trim(param.substr(0, eq))) == "q") {
        const std::string value = trim(param.substr(eq + 1));
        char* parse_end = nullptr;
        const double q = std::strtod(value.c_str(), &parse_end);
        // Malformed q keeps the default of 1.0.
        if (parse_end != value.c_str() && *parse_end == '\0') {
          entry.q = std::clamp(q, 0.0, 1.0);
        }
      }
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

}  // namespace

std::string serialize(const std::vector<Triple>& triples, RdfFormatKind format) {
  switch (format) {
    case RdfFormatKind::NTriples: return serialize_ntriples(triples);
    case RdfFormatKind::Turtle:
    case RdfFormatKind::N3: return serialize_turtle(triples);
    case RdfFormatKind::RdfXml: return serialize_rdfxml(triples);
  }
  throw std::logic_error("unknown format");
}

std::vector<Triple> parse(const std::string& bytes, RdfFormatKind format) {
  switch (format) {
    case RdfFormatKind::NTriples: return parse_ntriples(bytes);
    case RdfFormatKind::Turtle:
    case RdfFormatKind::N3: return parse_turtle(bytes);
    case RdfFormatKind::RdfXml: return RdfXmlParser(bytes).run();
  }
  throw std::logic_error("unknown format");
}

std::string compress(const std::string& bytes, Compression c,
                     const std::string& entry_extension) {
  switch (c) {
    case Compression::None: return bytes;
    case Compression::Gzip: return zlib_deflate(bytes, 15 + 16);
    case Compression::Bzip2: return bzip2_compress(bytes);
    case Compression::Zip: return zip_compress(bytes, "dump" + entry_extension);
  }
  throw std::logic_error("unknown compression");
}

std::string decompress(const std::string& bytes, Compression c) {
  switch (c) {
    case Compression::None: return bytes;
    case Compression::Gzip: return zlib_inflate(bytes, 15 + 16);
    case Compression::Bzip2: return bzip2_decompress(bytes);
    case Compression::Zip: return zip_decompress(bytes);
  }
  throw std::logic_error("unknown compression");
}

std::string dump_content_type(RdfFormatKind format, Compression c) {
  switch (c) {
    case Compression::None: return format_info(format).media_type;
    case Compression::Zip: return "application/zip";
    case Compression::Gzip: return "application/gzip";
    case Compression::Bzip2: return "application/x-bzip2";
  }
  throw std::logic_error("unknown compression");
}

Negotiated negotiate(const std::optional<std::string>& accept_header) {
  // Server preference order for ties.
  static constexpr RdfFormatKind preference[] = {
      RdfFormatKind::Turtle, RdfFormatKind::NTriples, RdfFormatKind::RdfXml,
      RdfFormatKind::N3};

  if (!accept_header.has_value() || trim(*accept_header).empty()) {
    return {RdfFormatKind::Turtle};
  }
  const std::vector<AcceptEntry> entries = parse_accept(*accept_header);
  if (entries.empty()) return {RdfFormatKind::Turtle};

  bool any_match = false;
  double best_q = -1.0;
  RdfFormatKind best = RdfFormatKind::Turtle;
  for (RdfFormatKind kind : preference) {
    const std::string media = format_info(kind).media_type;
    const std::size_t slash = media.find('/');
    const std::string type = media.substr(0, slash);
    const std::string subtype = media.substr(slash + 1);

    int precedence = -1;  // 2 exact, 1 type/*, 0 */*
    double q = 0.0;
    for (const auto& entry : entries) {
      int entry_precedence;
      if (entry.type == type && entry.subtype == subtype) entry_precedence = 2;
      else if (entry.type == type && entry.subtype == "*") entry_precedence = 1;
      else if (entry.type == "*" && entry.subtype == "*") entry_precedence = 0;
      else continue;
      if (entry_precedence > precedence ||
          (entry_precedence == precedence && entry.q > q)) {
        precedence = entry_precedence;
        q = entry.q;
      }
    }
    if (precedence < 0) continue;
    any_match = true;
    if (q > best_q) {
      best_q = q;
      best = kind;
    }
  }
  if (!any_match || best_q <= 0.0) return {std::nullopt};
  return {best};
}

std::optional<RdfFormatKind> format_for_media_type(const std::string& media_type) {
  const std::string media = to_lower(trim(media_type.substr(0, media_type.find(';'))));
  for (int i = 0; i < kRdfFormatCount; ++i) {
    const auto kind = static_cast<RdfFormatKind>(i);
    if (format_info(kind).media_type == media) return kind;
  }
  return std::nullopt;
}

std::optional<std::pair<RdfFormatKind, Compression>> classify_dump_path(
    const std::string& path) {
  std::string rest = path;
  Compression compression = Compression::None;
  for (Compression c : {Compression::Zip, Compression::Gzip, Compression::Bzip2}) {
    const std::string ext = compression_extension(c);
    if (rest.size() > ext.size() && rest.ends_with(ext)) {
      compression = c;
      rest.resize(rest.size() - ext.size());
      break;
    }
  }
  for (int i = 0; i < kRdfFormatCount; ++i) {
    const auto kind = static_cast<RdfFormatKind>(i);
    const std::string& ext = format_info(kind).extension;
    if (rest.size() > ext.size() && rest.ends_with(ext)) {
      return std::make_pair(kind, compression);
    }
  }
  return std::nullopt;
}

}  // namespace crawlbench
