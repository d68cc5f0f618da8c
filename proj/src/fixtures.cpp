#include "qb/fixtures.hpp"

namespace qb::fixtures {

FinCategory terminal_category() {
    FinCategory c;
    c.objects = {"*"};
    c.morphisms = {{"id", "*", "*"}};
    c.identities = {{"*", "id"}};
    c.composition = {{{"id", "id"}, "id"}};
    return c;
}

FinCategory arrow_category() {
    FinCategory c;
    c.objects = {"X", "Y"};
    c.morphisms = {{"1X", "X", "X"}, {"1Y", "Y", "Y"}, {"f", "X", "Y"}};
    c.identities = {{"X", "1X"}, {"Y", "1Y"}};
    c.composition = {{{"1X", "1X"}, "1X"},
                     {{"1Y", "1Y"}, "1Y"},
                     {{"f", "1X"}, "f"},
                     {{"1Y", "f"}, "f"}};
    return c;
}

QCategory two_antichain() {
    QCategory e;
    e.base = terminal_category();
    e.objects = {{"a", "*"}, {"b", "*"}};
    e.set_hom("a", "a", q_id(e.base, "*"));
    e.set_hom("b", "b", q_id(e.base, "*"));
    return e;
}

QCategory two_chain() { return chain(2); }

QCategory chain(std::size_t n) {
    QCategory e;
    e.base = terminal_category();
    for (std::size_t i = 0; i < n; ++i) e.objects.push_back({std::to_string(i), "*"});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            e.set_hom(std::to_string(i), std::to_string(j), q_id(e.base, "*"));
    return e;
}

QCategory one_object_over_arrow() {
    QCategory e;
    e.base = arrow_category();
    e.objects = {{"e", "X"}};
    e.set_hom("e", "e", q_id(e.base, "X"));
    return e;
}

}  // namespace qb::fixtures
