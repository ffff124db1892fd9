#include "lazylet/size.hpp"

namespace lazylet {

namespace {

NameId zeroId() {
    static NameId id = intern("Zero");
    return id;
}
NameId succId() {
    static NameId id = intern("Succ");
    return id;
}

std::int64_t sizeRec(const ExprPtr& e, bool peano);

std::int64_t sumKids(const ExprPtr& e, bool peano) {
    std::int64_t s = 0;
    for (const auto& k : e->kids) s += sizeRec(k, peano);
    return s;
}

std::int64_t sizeRec(const ExprPtr& e, bool peano) {
    auto& slot = peano ? e->sizePeano : e->sizePlain;
    std::int64_t cached = slot.load(std::memory_order_relaxed);
    if (cached >= 0) return cached;

    std::int64_t s = 0;
    if (peano && isNumeral(e)) {
        s = 1;
    } else {
        switch (e->tag) {
            case Tag::Var:
                s = 0;
                break;
            case Tag::App:
            case Tag::Seq:
            case Tag::Lam:
            case Tag::Con:
                s = 1 + sumKids(e, peano);
                break;
            case Tag::Case: {
                s = 1 + sizeRec(e->kids[0], peano);
                for (const auto& a : e->alts) s += 1 + sizeRec(a.rhs, peano);
                break;
            }
            case Tag::Letrec: {
                s = sizeRec(e->body, peano);
                for (const auto& b : e->binds) s += sizeRec(b.rhs, peano);
                break;
            }
        }
    }
    slot.store(s, std::memory_order_relaxed);
    return s;
}

} // namespace

bool isNumeral(const ExprPtr& e) {
    std::int8_t cached = e->numeralFlag.load(std::memory_order_relaxed);
    if (cached >= 0) return cached != 0;
    bool r = false;
    if (e->tag == Tag::Con) {
        if (e->name == zeroId() && e->kids.empty())
            r = true;
        else if (e->name == succId() && e->kids.size() == 1)
            r = isNumeral(e->kids[0]);
    }
    e->numeralFlag.store(r ? 1 : 0, std::memory_order_relaxed);
    return r;
}

std::uint64_t size(const ExprPtr& e, const SizeOptions& opts) {
    return static_cast<std::uint64_t>(sizeRec(e, opts.peanoAsUnit));
}

} // namespace lazylet
