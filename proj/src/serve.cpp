#include "dpkm/serve.hpp"

#include <algorithm>
#include <charconv>

#include "dpkm/centers.hpp"
#include "dpkm/error.hpp"
#include "dpkm/json_io.hpp"
#include "httplib.h"

namespace dpkm {

namespace {

const char* const fallback_page = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>decision graph explorer</title></head>
<body>
<h1>decision graph explorer</h1>
<p>No UI bundle was supplied (start with <code>--static-dir</code>). The JSON API is live:</p>
<ul>
<li><a href="/api/profile">GET /api/profile</a></li>
<li><a href="/api/gamma">GET /api/gamma</a></li>
<li>POST /api/select {"rhoMin", "deltaMin", "q", "mode"}</li>
<li>POST /api/select-k {"k", "q", "mode"}</li>
<li><a href="/api/data">GET /api/data?x=&lt;col&gt;&amp;y=&lt;col&gt;</a></li>
</ul>
</body></html>
)";

HttpReply error_reply(int status, const std::string& message) {
    return {status, json{{"error", message}}.dump()};
}

HttpReply no_profile(const std::optional<std::string>& why) {
    return error_reply(409, "no density profile loaded" + (why ? ": " + *why : std::string()));
}

double number_field(const json& body, const char* name) {
    if (!body.contains(name) || !body[name].is_number()) {
        throw DataError(std::string("field '") + name + "' must be a number");
    }
    return body[name].get<double>();
}

ImprovedOptions options_from(const json& body, const ImprovedOptions& defaults) {
    ImprovedOptions o = defaults;
    if (body.contains("q")) o.kernel = KernelSpec(number_field(body, "q"));
    if (body.contains("mode")) {
        if (!body["mode"].is_string()) throw DataError("field 'mode' must be a string");
        o.mode = parse_improved_mode(body["mode"].get<std::string>());
    }
    return o;
}

std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

ExplorerService::ExplorerService(Dataset data, PipelineConfig defaults)
    : data_(std::move(data)), defaults_(std::move(defaults)) {
    data_.validate();
    try {
        auto out = run_improved(data_, defaults_);
        profile_ = std::move(out.profile);
        default_assignment_ = std::move(out.result.assignment);
    } catch (const std::exception& e) {
        profile_error_ = e.what();
    }
    if (!profile_ && data_.size() >= 2) {
        // The default clustering failed; the profile alone may still work.
        try {
            profile_ = build_profile(pairwise_euclidean(data_), defaults_.t, defaults_.density_kernel);
            profile_error_.reset();
        } catch (const std::exception& e) {
            profile_error_ = e.what();
        }
    }
    if (profile_ && profile_->size() >= 3) {
        try {
            suggested_k_ = select_by_jump(*profile_).size();
        } catch (const AlgorithmError&) {
        }
    }
    if (profile_ && profile_->size() == 0) profile_.reset();
}

HttpReply ExplorerService::profile() const {
    if (!profile_) return no_profile(profile_error_);
    return {200, profile_to_json(*profile_).dump()};
}

HttpReply ExplorerService::gamma() const {
    if (!profile_) return no_profile(profile_error_);
    json entries = json::array();
    for (const auto i : gamma_order(profile_->gamma)) entries.push_back({{"i", i}, {"gamma", profile_->gamma[i]}});
    json body{{"gamma", std::move(entries)}, {"suggestedK", suggested_k_ ? json(*suggested_k_) : json(nullptr)}};
    return {200, body.dump()};
}

HttpReply ExplorerService::cluster_reply(const CenterSelection& selection, const ImprovedOptions& options) const {
    const auto result = improved_kmeans(data_.points, selection, options);
    json body{{"centers", selection.center_indices}, {"assignment", result.assignment}, {"e", result.criterion_e}};
    body["accuracy"] = data_.labels ? json(accuracy(result.assignment, *data_.labels).accuracy) : json(nullptr);
    return {200, body.dump()};
}

HttpReply ExplorerService::select(std::string_view body) const {
    if (!profile_) return no_profile(profile_error_);
    try {
        const auto request = json::parse(body);
        if (!request.is_object()) throw DataError("request body must be a JSON object");
        const double rho_min = number_field(request, "rhoMin");
        const double delta_min = number_field(request, "deltaMin");
        const auto options = options_from(request, defaults_.improved);
        return cluster_reply(select_by_rectangle(*profile_, rho_min, delta_min), options);
    } catch (const json::exception& e) {
        return error_reply(400, std::string("malformed JSON: ") + e.what());
    } catch (const std::exception& e) {
        return error_reply(400, e.what());
    }
}

HttpReply ExplorerService::select_k(std::string_view body) const {
    if (!profile_) return no_profile(profile_error_);
    try {
        const auto request = json::parse(body);
        if (!request.is_object() || !request.contains("k") || !request["k"].is_number_unsigned()) {
            throw DataError("field 'k' must be a positive integer");
        }
        const auto options = options_from(request, defaults_.improved);
        return cluster_reply(select_top_k(*profile_, request["k"].get<std::size_t>()), options);
    } catch (const json::exception& e) {
        return error_reply(400, std::string("malformed JSON: ") + e.what());
    } catch (const std::exception& e) {
        return error_reply(400, e.what());
    }
}

HttpReply ExplorerService::data(const std::optional<std::string>& x, const std::optional<std::string>& y,
                                const std::optional<std::string>& rho_min,
                                const std::optional<std::string>& delta_min) const {
    const auto resolve = [&](const std::optional<std::string>& ref, std::size_t fallback) -> std::optional<std::size_t> {
        if (!ref || ref->empty()) return fallback < data_.dims() ? std::optional(fallback) : std::nullopt;
        const auto it = std::find(data_.feature_names.begin(), data_.feature_names.end(), *ref);
        if (it != data_.feature_names.end()) return static_cast<std::size_t>(it - data_.feature_names.begin());
        std::size_t index = 0;
        const auto [ptr, ec] = std::from_chars(ref->data(), ref->data() + ref->size(), index);
        if (ec != std::errc{} || ptr != ref->data() + ref->size() || index >= data_.dims()) {
            throw DataError("unknown column '" + *ref + "'");
        }
        return index;
    };
    const auto column_name = [&](std::optional<std::size_t> c) {
        if (!c) return std::string("index");
        return c < data_.feature_names.size() ? data_.feature_names[*c] : std::to_string(*c);
    };

    try {
        const auto xc = resolve(x, 0);
        if (!xc) throw DataError("dataset has no columns");
        // A one-feature dataset plots against the point index.
        const auto yc = resolve(y, 1);

        std::optional<std::vector<int>> assignment = default_assignment_;
        if (rho_min || delta_min) {
            if (!profile_) return no_profile(profile_error_);
            const auto rm = parse_double(rho_min.value_or(""));
            const auto dm = parse_double(delta_min.value_or(""));
            if (!rm || !dm) throw DataError("rhoMin and deltaMin must both be numbers");
            assignment =
                improved_kmeans(data_.points, select_by_rectangle(*profile_, *rm, *dm), defaults_.improved).assignment;
        }

        json points = json::array();
        for (std::size_t i = 0; i < data_.size(); ++i) {
            json p{{"i", i},
                   {"x", data_.points(i, *xc)},
                   {"y", yc ? json(data_.points(i, *yc)) : json(i)},
                   {"cluster", assignment ? json((*assignment)[i]) : json(nullptr)}};
            if (data_.labels) p["label"] = (*data_.labels)[i];
            points.push_back(std::move(p));
        }
        json body{{"x", column_name(xc)}, {"y", column_name(yc)}, {"columns", data_.feature_names},
                  {"points", std::move(points)}};
        return {200, body.dump()};
    } catch (const std::exception& e) {
        return error_reply(400, e.what());
    }
}

struct ExplorerServer::Impl {
    explicit Impl(const ExplorerService& s) : service(s) {}
    const ExplorerService& service;
    httplib::Server server;
    int port = -1;
};

ExplorerServer::ExplorerServer(const ExplorerService& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
    auto& srv = impl_->server;
    const auto& svc = impl_->service;
    const auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_content(reply.body, reply.content_type.c_str());
    };
    const auto param = [](const httplib::Request& req, const char* name) -> std::optional<std::string> {
        if (!req.has_param(name)) return std::nullopt;
        return req.get_param_value(name);
    };

    srv.Get("/api/profile", [&svc, send](const httplib::Request&, httplib::Response& res) { send(res, svc.profile()); });
    srv.Get("/api/gamma", [&svc, send](const httplib::Request&, httplib::Response& res) { send(res, svc.gamma()); });
    srv.Post("/api/select", [&svc, send](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.select(req.body));
    });
    srv.Post("/api/select-k", [&svc, send](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.select_k(req.body));
    });
    srv.Get("/api/data", [&svc, send, param](const httplib::Request& req, httplib::Response& res) {
        send(res, svc.data(param(req, "x"), param(req, "y"), param(req, "rhoMin"), param(req, "deltaMin")));
    });

    if (static_dir) {
        srv.set_mount_point("/", static_dir->string());
    } else {
        srv.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content(fallback_page, "text/html"); });
    }
}

ExplorerServer::~ExplorerServer() { stop(); }

int ExplorerServer::bind(const std::string& host, int port) {
    auto& srv = impl_->server;
    if (port == 0) {
        impl_->port = srv.bind_to_any_port(host);
    } else {
        impl_->port = srv.bind_to_port(host, port) ? port : -1;
    }
    if (impl_->port < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return impl_->port;
}

void ExplorerServer::listen() { impl_->server.listen_after_bind(); }

void ExplorerServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace dpkm
