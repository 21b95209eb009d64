#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpkm/dataset.hpp"
#include "dpkm/pipeline.hpp"

namespace dpkm {

struct HttpReply {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

// Request handlers for the decision-graph explorer. Holds an immutable
// dataset, profile and default clustering; every handler is const and safe
// to call concurrently.
class ExplorerService {
public:
    ExplorerService(Dataset data, PipelineConfig defaults);

    bool has_profile() const { return profile_.has_value(); }
    const std::optional<std::string>& profile_error() const { return profile_error_; }

    // GET /api/profile
    HttpReply profile() const;
    // GET /api/gamma
    HttpReply gamma() const;
    // POST /api/select {rhoMin, deltaMin, q?, mode?}
    HttpReply select(std::string_view body) const;
    // POST /api/select-k {k, q?, mode?}
    HttpReply select_k(std::string_view body) const;
    // GET /api/data?x=&y=[&rhoMin=&deltaMin=]
    HttpReply data(const std::optional<std::string>& x, const std::optional<std::string>& y,
                   const std::optional<std::string>& rho_min = std::nullopt,
                   const std::optional<std::string>& delta_min = std::nullopt) const;

private:
    HttpReply cluster_reply(const CenterSelection& selection, const ImprovedOptions& options) const;

    Dataset data_;
    PipelineConfig defaults_;
    std::optional<DensityProfile> profile_;
    std::optional<std::string> profile_error_;
    std::optional<std::vector<int>> default_assignment_;
    std::optional<std::size_t> suggested_k_;
};

// HTTP binding of ExplorerService plus the static UI bundle.
class ExplorerServer {
public:
    explicit ExplorerServer(const ExplorerService& service, std::optional<std::filesystem::path> static_dir = {});
    ~ExplorerServer();
    ExplorerServer(const ExplorerServer&) = delete;
    ExplorerServer& operator=(const ExplorerServer&) = delete;

    // Port 0 binds an ephemeral port. Returns the bound port.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace dpkm
