#pragma once

// Run manifest: config echo, code version, per-experiment pass/fail and a
// SHA-256 digest of every emitted file. No timestamps, so identical runs
// give identical manifests.

#include <map>
#include <string>
#include <vector>

namespace shear {

inline constexpr const char *kCodeVersion = "orbitlab 0.1.0";

std::string sha256_hex(const std::string &bytes);
std::string sha256_file(const std::string &path);

struct RunManifest {
    std::map<std::string, std::string> config;
    std::string code_version = kCodeVersion;
    std::map<std::string, bool> experiments;
    std::map<std::string, std::string> files;  // name -> sha256

    bool all_pass() const;
    std::string to_json() const;
    static RunManifest from_json(const std::string &text);
};

// Names of files in `dir` with extension .csv, .json or .svg, sorted,
// excluding manifest.json.
std::vector<std::string> run_files(const std::string &dir);

// Files whose digest differs from the manifest, or that are missing.
std::vector<std::string> verify_manifest(const std::string &dir, const RunManifest &manifest);

} // namespace shear
