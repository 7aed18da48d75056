#include "poisson/cli/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace poisson::cli {

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < length; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

Report::Report(std::string task, std::string input, std::string digest)
    : task_(std::move(task)), input_(std::move(input)), digest_(std::move(digest)) {}

void Report::set(const std::string& key, const std::string& value) {
    if (std::any_of(keys_.begin(), keys_.end(), [&](const auto& kv) { return kv.first == key; }))
        throw std::logic_error("duplicate report key " + key);
    keys_.emplace_back(key, value);
}

void Report::witness(const std::string& text) {
    pass_ = false;
    witnesses_.push_back(text);
}

std::string Report::human(double seconds) const {
    std::ostringstream out;
    out << "task: " << task_ << "\ninput: " << input_ << "\n\n";
    for (const auto& l : lines_) out << l << '\n';
    if (!witnesses_.empty()) {
        out << "\nwitnesses:\n";
        for (const auto& w : witnesses_) out << "  " << w << '\n';
    }
    char time[64];
    std::snprintf(time, sizeof time, "%.3f", seconds);
    out << "\nstatus: " << (pass_ ? "PASS" : "FAIL") << "\ntime: " << time << " s\n";
    return out.str();
}

std::string Report::machine() const {
    std::ostringstream out;
    out << "task=" << task_ << "\nstatus=" << (pass_ ? "PASS" : "FAIL") << "\ninput_sha256=" << digest_ << '\n';
    for (const auto& [k, v] : keys_) out << k << '=' << v << '\n';
    out << "witnesses=" << witnesses_.size() << '\n';
    for (std::size_t i = 0; i < witnesses_.size(); ++i) out << "witness." << i << '=' << witnesses_[i] << '\n';
    return out.str();
}

}  // namespace poisson::cli
