#include "shear/orbitlab/manifest.hpp"
#include "shear/error.hpp"
#include "shear/orbitlab/format.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace shear {

std::string sha256_hex(const std::string &bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed");
    static const char *hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string sha256_file(const std::string &path) { return sha256_hex(read_text(path)); }

bool RunManifest::all_pass() const
{
    return std::all_of(experiments.begin(), experiments.end(), [](const auto &e) { return e.second; });
}

std::string RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["code_version"] = code_version;
    j["config"] = config;
    j["experiments"] = experiments;
    j["files"] = files;
    j["pass"] = all_pass();
    return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string &text)
{
    RunManifest m;
    try {
        auto j = nlohmann::json::parse(text);
        m.code_version = j.at("code_version").get<std::string>();
        m.config = j.at("config").get<std::map<std::string, std::string>>();
        m.experiments = j.at("experiments").get<std::map<std::string, bool>>();
        m.files = j.at("files").get<std::map<std::string, std::string>>();
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::missing_input, std::string("malformed manifest: ") + e.what());
    }
    return m;
}

std::vector<std::string> run_files(const std::string &dir)
{
    namespace fs = std::filesystem;
    std::vector<std::string> names;
    if (!fs::is_directory(dir))
        return names;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        std::string name = entry.path().filename().string();
        std::string ext = entry.path().extension().string();
        if (name != "manifest.json" && (ext == ".csv" || ext == ".json" || ext == ".svg"))
            names.push_back(name);
    }
    std::sort(names.begin(), names.end());
    return names;
}

std::vector<std::string> verify_manifest(const std::string &dir, const RunManifest &manifest)
{
    std::vector<std::string> bad;
    for (const auto &[name, digest] : manifest.files) {
        std::string path = dir + "/" + name;
        if (!std::filesystem::exists(path) || sha256_file(path) != digest)
            bad.push_back(name);
    }
    return bad;
}

} // namespace shear
