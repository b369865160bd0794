#pragma once

#include <string>
#include <vector>

#include "fxlang/token.hpp"

namespace fxlang {

// Observable timeline entry. The relative ordering of token consumption
// and intermediate results is what the incrementality tests assert on.
struct Event {
    enum class Kind { TokenConsumed, Intermediate, CodeEmitted, ErrorReported };

    int seq = 0;
    Kind kind = Kind::TokenConsumed;
    std::string payload;
};

inline const char* kind_name(Event::Kind k) {
    switch (k) {
        case Event::Kind::TokenConsumed: return "TOKEN";
        case Event::Kind::Intermediate: return "INTERMEDIATE";
        case Event::Kind::CodeEmitted: return "CODE";
        case Event::Kind::ErrorReported: return "ERROR";
    }
    return "?";
}

class EventLog {
public:
    int token_consumed(const Token& t) { return push(Event::Kind::TokenConsumed, describe(t)); }
    int intermediate(long long v) { return push(Event::Kind::Intermediate, std::to_string(v)); }
    int code_emitted(std::string text) { return push(Event::Kind::CodeEmitted, std::move(text)); }
    int error_reported(std::string msg) { return push(Event::Kind::ErrorReported, std::move(msg)); }

    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    // One event per line: `<seq> <KIND> <payload>`.
    std::string dump() const {
        std::string out;
        for (const Event& e : events_) {
            out += std::to_string(e.seq);
            out += ' ';
            out += kind_name(e.kind);
            if (!e.payload.empty()) {
                out += ' ';
                out += e.payload;
            }
            out += '\n';
        }
        return out;
    }

    // Suppresses emission for the guard's lifetime; used by analysis
    // passes that replay denotations without observable effect.
    class MuteGuard {
    public:
        explicit MuteGuard(EventLog& log) : log_(log) { ++log_.muted_; }
        ~MuteGuard() { --log_.muted_; }
        MuteGuard(const MuteGuard&) = delete;
        MuteGuard& operator=(const MuteGuard&) = delete;

    private:
        EventLog& log_;
    };

private:
    int push(Event::Kind k, std::string payload) {
        if (muted_ > 0) return 0;
        int seq = next_seq_++;
        events_.push_back(Event{seq, k, std::move(payload)});
        return seq;
    }

    std::vector<Event> events_;
    int next_seq_ = 1;
    int muted_ = 0;
};

}  // namespace fxlang
