// Copyright 2026 The Moralscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ExternalScorer against an in-process fake inference service.

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "httplib.h"
#include "json.hpp"
#include "moralscope/zsc.h"
#include "test_helpers.h"

namespace moralscope::zsc {
namespace {

using Handler =
    std::function<void(const httplib::Request &, httplib::Response &)>;

class FakeServer {
 public:
  explicit FakeServer(Handler score) {
    server_.Post("/score", [this, score](const httplib::Request &req,
                                          httplib::Response &res) {
      ++requests_;
      last_body_ = req.body;
      score(req, res);
    });
    server_.Get("/health", [](const httplib::Request &, httplib::Response &res) {
      res.set_content(R"({"status":"ok"})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  EndpointConfig Config() const {
    EndpointConfig c;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port_);
    c.timeout = std::chrono::milliseconds(2000);
    c.retries = 0;
    c.backoff = std::chrono::milliseconds(1);
    return c;
  }
  int requests() const { return requests_; }
  const std::string &last_body() const { return last_body_; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> requests_{0};
  std::string last_body_;
};

Handler Reply(std::string body, int status = 200) {
  return [body, status](const httplib::Request &, httplib::Response &res) {
    res.status = status;
    res.set_content(body, "application/json");
  };
}

// A loopback port nothing listens on: bound, read back, then closed.
int UnusedPort() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  ::bind(fd, reinterpret_cast<sockaddr *>(&addr), sizeof addr);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr *>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

const LabelSet kTwoLabels{Dimension(Foundation::kCare, Polarity::kVirtue),
                          {"care", "protect"}};

TEST(ExternalScorerTest, ValidPayloadPassesThrough) {
  FakeServer server(Reply(R"({"scores":[0.91,0.12]})"));
  const auto s = ScoreLabelsExternal("Stay safe", kTwoLabels, server.Config());
  EXPECT_EQ(s.scores, (std::vector<double>{0.91, 0.12}));
  EXPECT_EQ(s.dimension, kTwoLabels.dimension);
  const auto request = nlohmann::json::parse(server.last_body());
  EXPECT_EQ(request.at("text"), "Stay safe");
  EXPECT_EQ(request.at("labels"), nlohmann::json({"care", "protect"}));
  EXPECT_EQ(request.at("multi_label"), true);
}

TEST(ExternalScorerTest, LengthMismatchIsProtocolViolation) {
  FakeServer server(Reply(R"({"scores":[0.1,0.2,0.3]})"));
  EXPECT_MS_ERROR(ScoreLabelsExternal("x", kTwoLabels, server.Config()),
                  ErrorCode::kProtocolViolation);
}

TEST(ExternalScorerTest, OutOfRangeIsProtocolViolation) {
  FakeServer server(Reply(R"({"scores":[1.3,0.2]})"));
  EXPECT_MS_ERROR(ScoreLabelsExternal("x", kTwoLabels, server.Config()),
                  ErrorCode::kProtocolViolation);
}

TEST(ExternalScorerTest, MalformedBodyIsProtocolViolation) {
  FakeServer server(Reply(R"({"labels":[]})"));
  EXPECT_MS_ERROR(ScoreLabelsExternal("x", kTwoLabels, server.Config()),
                  ErrorCode::kProtocolViolation);
}

TEST(ExternalScorerTest, ProtocolViolationIsNotRetried) {
  FakeServer server(Reply(R"({"scores":[2.0,0.2]})"));
  auto config = server.Config();
  config.retries = 3;
  EXPECT_MS_ERROR(ScoreLabelsExternal("x", kTwoLabels, config),
                  ErrorCode::kProtocolViolation);
  EXPECT_EQ(server.requests(), 1);
}

TEST(ExternalScorerTest, ServerErrorsAreRetried) {
  std::atomic<int> calls{0};
  FakeServer server([&calls](const httplib::Request &, httplib::Response &res) {
    if (++calls < 3) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"scores":[0.5,0.5]})", "application/json");
  });
  auto config = server.Config();
  config.retries = 3;
  const auto s = ScoreLabelsExternal("x", kTwoLabels, config);
  EXPECT_EQ(s.scores, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(server.requests(), 3);
}

TEST(ExternalScorerTest, RetriesExhausted) {
  FakeServer server(Reply("", 500));
  auto config = server.Config();
  config.retries = 2;
  EXPECT_MS_ERROR(ScoreLabelsExternal("x", kTwoLabels, config),
                  ErrorCode::kServiceUnreachable);
  EXPECT_EQ(server.requests(), 3);
}

TEST(ExternalScorerTest, UnreachableEndpoint) {
  const int port = UnusedPort();
  EndpointConfig config;
  config.endpoint = "http://127.0.0.1:" + std::to_string(port);
  config.retries = 1;
  config.backoff = std::chrono::milliseconds(1);
  config.timeout = std::chrono::milliseconds(500);
  EXPECT_MS_ERROR(ScoreLabelsExternal("x", kTwoLabels, config),
                  ErrorCode::kServiceUnreachable);
  EXPECT_FALSE(ExternalScorer(config).Healthy());
}

TEST(ExternalScorerTest, SlowServerTimesOut) {
  FakeServer server([](const httplib::Request &, httplib::Response &res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    res.set_content(R"({"scores":[0.5,0.5]})", "application/json");
  });
  auto config = server.Config();
  config.timeout = std::chrono::milliseconds(100);
  EXPECT_MS_ERROR(ScoreLabelsExternal("x", kTwoLabels, config),
                  ErrorCode::kTimeout);
}

TEST(ExternalScorerTest, HealthAndScoreAll) {
  FakeServer server([](const httplib::Request &req, httplib::Response &res) {
    const auto body = nlohmann::json::parse(req.body);
    const std::vector<double> scores(body.at("labels").size(), 0.25);
    res.set_content(nlohmann::json{{"scores", scores}}.dump(),
                    "application/json");
  });
  auto config = server.Config();
  config.max_in_flight = 2;
  const ExternalScorer scorer(config);
  EXPECT_TRUE(scorer.Healthy());
  std::vector<LabelSet> sets;
  for (Dimension d : AllDimensions()) sets.push_back({d, {"a", "b", "c"}});
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      const auto all = scorer.ScoreAll("text", {}, sets);
      if (all.size() == kNumDimensions && all[9].scores.size() == 3 &&
          all[9].dimension == sets[9].dimension) {
        ++ok;
      }
    });
  }
  for (auto &t : threads) t.join();
  EXPECT_EQ(ok, 4);
  EXPECT_EQ(server.requests(), 40);
}

}  // namespace
}  // namespace moralscope::zsc
