// Copyright (C) 2026 crawlbench contributors
// SPDX-License-Identifier: Apache-2.0
//
// Canonical, byte-stable manifest encoding. A manifest on disk is a directory
// holding `manifest.json` (sorted keys, 2-space indent, trailing newline) and
// `expected/node-{k}.nt` (sorted canonical N-Triples, one per line). Equal
// configs produce identical bytes.

#pragma once

#include <filesystem>
#include <string>

#include "crawlbench/model.hpp"

namespace crawlbench {

/// Canonical JSON text of the manifest (without the expected triple files).
std::string encode_manifest_json(const CloudManifest& manifest);

/// Inverse of encode_manifest_json; expected lines are left empty.
CloudManifest decode_manifest_json(const std::string& json_text);

/// Writes manifest.json plus expected/node-{k}.nt under `dir`.
void write_manifest(const CloudManifest& manifest,
                    const std::filesystem::path& dir);

/// Reads a manifest directory written by write_manifest.
CloudManifest read_manifest(const std::filesystem::path& dir);

/// Canonical JSON for a CloudConfig alone (the report's config echo).
std::string encode_config_json(const CloudConfig& config);
CloudConfig decode_config_json(const std::string& json_text);

}  // namespace crawlbench
