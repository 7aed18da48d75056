#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace poisson::cli {

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

/// Human-readable lines plus an ordered key=value block. Only the human part
/// carries the run time, so machine blocks of equal runs are byte-identical.
class Report {
public:
    Report(std::string task, std::string input, std::string digest);

    void line(std::string text) { lines_.push_back(std::move(text)); }
    void blank() { lines_.emplace_back(); }
    /// Adds a machine key; throws std::logic_error on a repeated key.
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
    void flag(const std::string& key, bool value) { set(key, value ? "true" : "false"); }
    /// A failure witness; marks the report FAIL and shows up in both parts.
    void witness(const std::string& text);
    void fail() { pass_ = false; }

    bool pass() const { return pass_; }
    const std::string& task() const { return task_; }
    const std::vector<std::string>& witnesses() const { return witnesses_; }

    std::string human(double seconds) const;
    std::string machine() const;

private:
    std::string task_;
    std::string input_;
    std::string digest_;
    bool pass_ = true;
    std::vector<std::string> lines_;
    std::vector<std::pair<std::string, std::string>> keys_;
    std::vector<std::string> witnesses_;
};

}  // namespace poisson::cli
