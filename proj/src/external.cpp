#include "resolute/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <json.hpp>

namespace resolute {

namespace {

using Clock = std::chrono::steady_clock;

struct Pipe {
    int fd[2] = {-1, -1};
    Pipe() {
        if (::pipe2(fd, O_CLOEXEC) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    void close_read() {
        if (fd[0] >= 0) ::close(fd[0]);
        fd[0] = -1;
    }
    void close_write() {
        if (fd[1] >= 0) ::close(fd[1]);
        fd[1] = -1;
    }
};

void ignore_sigpipe() {
    static std::once_flag once;
    std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

std::mutex& external_mutex() {
    static std::mutex m;
    return m;
}

nlohmann::json to_json(const Value& v, const ModelInstance& model) {
    return std::visit(
        [&](const auto& x) -> nlohmann::json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, SetValue>) {
                auto arr = nlohmann::json::array();
                for (const auto& item : x.items()) arr.push_back(to_json(item, model));
                return arr;
            } else if constexpr (std::is_same_v<T, ComponentRef> || std::is_same_v<T, ConnectionRef> ||
                                 std::is_same_v<T, FeatureRef>) {
                return model.qualified_name(x);
            } else {
                return x;
            }
        },
        v.data());
}

std::optional<Value> from_json(const nlohmann::json& j, const Type& type, const ModelInstance& model) {
    using Tag = Type::Tag;
    switch (type.tag()) {
        case Tag::Bool:
            if (j.is_boolean()) return Value(j.get<bool>());
            return std::nullopt;
        case Tag::Int:
            if (j.is_number_integer()) return Value(j.get<std::int64_t>());
            return std::nullopt;
        case Tag::Real:
            if (j.is_number()) return Value(j.get<double>());
            return std::nullopt;
        case Tag::String:
            if (j.is_string()) return Value(j.get<std::string>());
            return std::nullopt;
        case Tag::Component:
        case Tag::Connection:
        case Tag::Feature: {
            if (!j.is_string()) return std::nullopt;
            auto ref = model.find(j.get<std::string>());
            if (!ref) return std::nullopt;
            Value v = Value::from_element(*ref);
            if (!v.conforms_to(type, model)) return std::nullopt;
            return v;
        }
        case Tag::Set: {
            if (!j.is_array()) return std::nullopt;
            std::vector<Value> items;
            for (const auto& e : j) {
                auto v = from_json(e, type.element(), model);
                if (!v) return std::nullopt;
                items.push_back(std::move(*v));
            }
            return Value(SetValue(std::move(items)));
        }
        case Tag::Empty:
        case Tag::Dynamic:
            return std::nullopt;
    }
    return std::nullopt;
}

std::string last_line(const std::string& text) {
    std::size_t end = text.size();
    while (end > 0) {
        std::size_t start = text.rfind('\n', end - 1);
        start = start == std::string::npos ? 0 : start + 1;
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) return line;
        if (start == 0) break;
        end = start - 1;
    }
    return {};
}

}  // namespace

ProcessResult run_process(const std::string& command, const std::string& input, std::chrono::milliseconds timeout) {
    ignore_sigpipe();
    Pipe in, out, err;
    pid_t pid = ::fork();
    if (pid < 0) throw Error(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        ::dup2(in.fd[0], STDIN_FILENO);
        ::dup2(out.fd[1], STDOUT_FILENO);
        ::dup2(err.fd[1], STDERR_FILENO);
        ::signal(SIGPIPE, SIG_DFL);
        ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    in.close_read();
    out.close_write();
    err.close_write();
    ::fcntl(in.fd[1], F_SETFL, O_NONBLOCK);

    ProcessResult result;
    std::size_t written = 0;
    if (input.empty()) in.close_write();
    const auto deadline = Clock::now() + timeout;
    char buf[4096];
    while (out.fd[0] >= 0 || err.fd[0] >= 0) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
        if (left.count() <= 0) {
            result.timed_out = true;
            break;
        }
        pollfd fds[3];
        int n = 0;
        int idx_in = -1, idx_out = -1, idx_err = -1;
        if (in.fd[1] >= 0) {
            idx_in = n;
            fds[n++] = {in.fd[1], POLLOUT, 0};
        }
        if (out.fd[0] >= 0) {
            idx_out = n;
            fds[n++] = {out.fd[0], POLLIN, 0};
        }
        if (err.fd[0] >= 0) {
            idx_err = n;
            fds[n++] = {err.fd[0], POLLIN, 0};
        }
        int rc = ::poll(fds, n, static_cast<int>(std::min<long long>(left.count(), 1000)));
        if (rc < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (idx_in >= 0 && fds[idx_in].revents) {
            ssize_t w = ::write(in.fd[1], input.data() + written, input.size() - written);
            if (w > 0) written += static_cast<std::size_t>(w);
            if (w < 0 && errno != EAGAIN) written = input.size();  // child closed stdin
            if (written >= input.size()) in.close_write();
        }
        auto drain = [&](int idx, Pipe& p, std::string& sink) {
            if (idx < 0 || !fds[idx].revents) return;
            ssize_t r = ::read(p.fd[0], buf, sizeof buf);
            if (r > 0) {
                sink.append(buf, static_cast<std::size_t>(r));
            } else if (r == 0 || errno != EINTR) {
                p.close_read();
            }
        };
        drain(idx_out, out, result.out);
        drain(idx_err, err, result.err);
    }
    in.close_write();
    int status = 0;
    if (result.timed_out) {
        ::kill(pid, SIGKILL);
        ::waitpid(pid, &status, 0);
        return result;
    }
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string encode_external_args(const std::vector<Value>& args, const ModelInstance& model) {
    auto arr = nlohmann::json::array();
    for (const auto& a : args) arr.push_back(to_json(a, model));
    return arr.dump();
}

Value decode_external_result(const std::string& output, const Type& type, const ModelInstance& model,
                             const ExternalDef& decl, const SourceLocation& loc) {
    std::string line = last_line(output);
    auto fail = [&](const std::string& why) {
        throw EvalError(loc, "external '" + decl.name + "' (command \"" + decl.command + "\") " + why);
    };
    if (line.empty()) fail("produced no output");
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) fail("produced unparseable output '" + line + "'");
    auto v = from_json(j, type, model);
    if (!v) fail("output '" + line + "' is not a value of type " + type.str());
    return *v;
}

Value run_external(const ExternalDef& decl, const std::vector<Value>& args, const ModelInstance& model,
                   std::chrono::milliseconds timeout, const SourceLocation& loc) {
    std::string input = encode_external_args(args, model) + "\n";
    ProcessResult r;
    if (decl.stateless) {
        r = run_process(decl.command, input, timeout);
    } else {
        std::lock_guard lock(external_mutex());
        r = run_process(decl.command, input, timeout);
    }
    std::string where = "external '" + decl.name + "' (command \"" + decl.command + "\")";
    if (r.timed_out) {
        throw EvalError(loc, where + " timed out after " + format_real(timeout.count() / 1000.0) + "s");
    }
    if (r.exit_code != 0) {
        std::string msg = where + " exited with status " + std::to_string(r.exit_code);
        std::string tail = last_line(r.err);
        if (!tail.empty()) msg += ": " + tail;
        throw EvalError(loc, msg);
    }
    return decode_external_result(r.out, decl.return_type, model, decl, loc);
}

}  // namespace resolute
