#pragma once

// First paragraph of "A Scandal in Bohemia" (The Adventures of Sherlock
// Holmes, Arthur Conan Doyle): 1137 characters over a 38-symbol alphabet.
// Used by the demo and the acceptance suite as the reference corpus.

namespace hrc_tests {

inline constexpr char kSherlockCorpus[] =
    "To Sherlock Holmes she is always THE woman. I have seldom heard him mention "
    "her any other name. In his eyes she eclipses and predominates the whole of h"
    "er sex. It was not that he felt any emotion akin to love for Irene Adler. Al"
    "l emotions, and that one particularly, were abhorrent to his cold, precise b"
    "ut admirably balanced mind. He was, I take it, the most perfect reasoning an"
    "d observing machine that the world has seen, but as a lover he would have pl"
    "aced himself in a false position. He never spoke of the softer passions, sav"
    "e with a gibe and a sneer. They were admirable things for the observer--exce"
    "llent for drawing the veil from men's motives and actions. But for the train"
    "ed reasoner to admit such intrusions into his own delicate and finely adjust"
    "ed temperament was to introduce a distracting factor which might throwa doub"
    "t upon all his mental results. Grit in a sensitive instrument, or a crackin "
    "one of his own high-power lenses, would not be more disturbing than a strong"
    "emotion in a nature such as his. And yet there was but one woman to him, and"
    " that woman was the late Irene Adler, of dubious and questionable memory.";

}  // namespace hrc_tests
