#include "emoforge/linguistics.hpp"

namespace emoforge {
namespace detail {

// Closed-class lexicon for the rule tagger. Includes the contraction forms
// both with and without apostrophes since preprocessing may strip them.
const std::map<std::string, PosTag>& pos_lexicon() {
    static const std::map<std::string, PosTag> lexicon = {
        // pronouns
        {"i", PosTag::PRON}, {"me", PosTag::PRON}, {"my", PosTag::PRON},
        {"mine", PosTag::PRON}, {"myself", PosTag::PRON}, {"you", PosTag::PRON},
        {"your", PosTag::PRON}, {"yours", PosTag::PRON}, {"yourself", PosTag::PRON},
        {"he", PosTag::PRON}, {"him", PosTag::PRON}, {"his", PosTag::PRON},
        {"she", PosTag::PRON}, {"her", PosTag::PRON}, {"hers", PosTag::PRON},
        {"it", PosTag::PRON}, {"its", PosTag::PRON}, {"itself", PosTag::PRON},
        {"we", PosTag::PRON}, {"us", PosTag::PRON}, {"our", PosTag::PRON},
        {"ours", PosTag::PRON}, {"they", PosTag::PRON}, {"them", PosTag::PRON},
        {"their", PosTag::PRON}, {"theirs", PosTag::PRON}, {"themselves", PosTag::PRON},
        {"this", PosTag::PRON}, {"these", PosTag::PRON}, {"those", PosTag::PRON},
        {"who", PosTag::PRON}, {"whom", PosTag::PRON}, {"whose", PosTag::PRON},
        {"which", PosTag::PRON}, {"what", PosTag::PRON}, {"someone", PosTag::PRON},
        {"somebody", PosTag::PRON}, {"anyone", PosTag::PRON}, {"anybody", PosTag::PRON},
        {"everyone", PosTag::PRON}, {"everybody", PosTag::PRON}, {"nobody", PosTag::PRON},
        {"something", PosTag::PRON}, {"anything", PosTag::PRON}, {"everything", PosTag::PRON},
        {"nothing", PosTag::PRON}, {"u", PosTag::PRON}, {"ur", PosTag::PRON},
        {"im", PosTag::PRON}, {"i'm", PosTag::PRON}, {"ive", PosTag::PRON},
        {"i've", PosTag::PRON}, {"id", PosTag::PRON}, {"i'd", PosTag::PRON},
        {"ill", PosTag::PRON}, {"i'll", PosTag::PRON}, {"youre", PosTag::PRON},
        {"you're", PosTag::PRON}, {"theyre", PosTag::PRON}, {"they're", PosTag::PRON},
        // auxiliaries and modal verbs
        {"am", PosTag::AUX}, {"is", PosTag::AUX}, {"are", PosTag::AUX},
        {"was", PosTag::AUX}, {"were", PosTag::AUX}, {"be", PosTag::AUX},
        {"been", PosTag::AUX}, {"being", PosTag::AUX}, {"have", PosTag::AUX},
        {"has", PosTag::AUX}, {"had", PosTag::AUX}, {"having", PosTag::AUX},
        {"do", PosTag::AUX}, {"does", PosTag::AUX}, {"did", PosTag::AUX},
        {"will", PosTag::AUX}, {"would", PosTag::AUX}, {"can", PosTag::AUX},
        {"could", PosTag::AUX}, {"shall", PosTag::AUX}, {"should", PosTag::AUX},
        {"may", PosTag::AUX}, {"might", PosTag::AUX}, {"must", PosTag::AUX},
        {"can't", PosTag::AUX}, {"cant", PosTag::AUX}, {"cannot", PosTag::AUX},
        {"won't", PosTag::AUX}, {"wont", PosTag::AUX}, {"don't", PosTag::AUX},
        {"dont", PosTag::AUX}, {"doesn't", PosTag::AUX}, {"doesnt", PosTag::AUX},
        {"didn't", PosTag::AUX}, {"didnt", PosTag::AUX}, {"isn't", PosTag::AUX},
        {"isnt", PosTag::AUX}, {"aren't", PosTag::AUX}, {"arent", PosTag::AUX},
        {"wasn't", PosTag::AUX}, {"wasnt", PosTag::AUX}, {"weren't", PosTag::AUX},
        {"werent", PosTag::AUX}, {"haven't", PosTag::AUX}, {"havent", PosTag::AUX},
        {"hasn't", PosTag::AUX}, {"hasnt", PosTag::AUX}, {"wouldn't", PosTag::AUX},
        {"wouldnt", PosTag::AUX}, {"couldn't", PosTag::AUX}, {"couldnt", PosTag::AUX},
        {"shouldn't", PosTag::AUX}, {"shouldnt", PosTag::AUX}, {"ain't", PosTag::AUX},
        {"aint", PosTag::AUX},
        // determiners
        {"the", PosTag::DET}, {"a", PosTag::DET}, {"an", PosTag::DET},
        {"some", PosTag::DET}, {"any", PosTag::DET}, {"no", PosTag::DET},
        {"every", PosTag::DET}, {"each", PosTag::DET}, {"all", PosTag::DET},
        {"both", PosTag::DET}, {"either", PosTag::DET}, {"neither", PosTag::DET},
        {"another", PosTag::DET}, {"such", PosTag::DET}, {"that", PosTag::DET},
        // adpositions
        {"in", PosTag::ADP}, {"on", PosTag::ADP}, {"at", PosTag::ADP},
        {"by", PosTag::ADP}, {"with", PosTag::ADP}, {"from", PosTag::ADP},
        {"to", PosTag::ADP}, {"of", PosTag::ADP}, {"for", PosTag::ADP},
        {"about", PosTag::ADP}, {"into", PosTag::ADP}, {"onto", PosTag::ADP},
        {"over", PosTag::ADP}, {"under", PosTag::ADP}, {"through", PosTag::ADP},
        {"between", PosTag::ADP}, {"against", PosTag::ADP}, {"during", PosTag::ADP},
        {"without", PosTag::ADP}, {"within", PosTag::ADP}, {"across", PosTag::ADP},
        {"behind", PosTag::ADP}, {"beyond", PosTag::ADP}, {"around", PosTag::ADP},
        {"near", PosTag::ADP}, {"after", PosTag::ADP}, {"before", PosTag::ADP},
        {"until", PosTag::ADP}, {"upon", PosTag::ADP}, {"since", PosTag::ADP},
        {"despite", PosTag::ADP}, {"toward", PosTag::ADP}, {"towards", PosTag::ADP},
        {"via", PosTag::ADP}, {"per", PosTag::ADP},
        // particles (adverbial particles lean ADV below)
        {"not", PosTag::PART}, {"nt", PosTag::PART},
        // conjunctions
        {"and", PosTag::CONJ}, {"or", PosTag::CONJ}, {"but", PosTag::CONJ},
        {"nor", PosTag::CONJ}, {"yet", PosTag::CONJ}, {"because", PosTag::CONJ},
        {"if", PosTag::CONJ}, {"when", PosTag::CONJ}, {"while", PosTag::CONJ},
        {"although", PosTag::CONJ}, {"though", PosTag::CONJ}, {"unless", PosTag::CONJ},
        {"whereas", PosTag::CONJ}, {"cause", PosTag::CONJ}, {"cuz", PosTag::CONJ},
        // numerals
        {"one", PosTag::NUM}, {"two", PosTag::NUM}, {"three", PosTag::NUM},
        {"four", PosTag::NUM}, {"five", PosTag::NUM}, {"six", PosTag::NUM},
        {"seven", PosTag::NUM}, {"eight", PosTag::NUM}, {"nine", PosTag::NUM},
        {"ten", PosTag::NUM}, {"hundred", PosTag::NUM}, {"thousand", PosTag::NUM},
        {"million", PosTag::NUM}, {"first", PosTag::NUM}, {"second", PosTag::NUM},
        {"third", PosTag::NUM},
        // interjections (social media heavy)
        {"oh", PosTag::INTJ}, {"wow", PosTag::INTJ}, {"omg", PosTag::INTJ},
        {"lol", PosTag::INTJ}, {"lmao", PosTag::INTJ}, {"yay", PosTag::INTJ},
        {"ugh", PosTag::INTJ}, {"hey", PosTag::INTJ}, {"hi", PosTag::INTJ},
        {"hello", PosTag::INTJ}, {"haha", PosTag::INTJ}, {"hahaha", PosTag::INTJ},
        {"yes", PosTag::INTJ}, {"yeah", PosTag::INTJ}, {"yep", PosTag::INTJ},
        {"nope", PosTag::INTJ}, {"damn", PosTag::INTJ}, {"wtf", PosTag::INTJ},
        {"smh", PosTag::INTJ}, {"hmm", PosTag::INTJ}, {"ok", PosTag::INTJ},
        {"okay", PosTag::INTJ}, {"whoa", PosTag::INTJ}, {"oops", PosTag::INTJ},
        {"huh", PosTag::INTJ}, {"please", PosTag::INTJ}, {"thanks", PosTag::INTJ},
        // adverbs, negation-adjacent forms and particles used adverbially
        {"very", PosTag::ADV}, {"really", PosTag::ADV}, {"quite", PosTag::ADV},
        {"so", PosTag::ADV}, {"too", PosTag::ADV}, {"now", PosTag::ADV},
        {"then", PosTag::ADV}, {"here", PosTag::ADV}, {"there", PosTag::ADV},
        {"never", PosTag::ADV}, {"always", PosTag::ADV}, {"often", PosTag::ADV},
        {"sometimes", PosTag::ADV}, {"again", PosTag::ADV}, {"still", PosTag::ADV},
        {"just", PosTag::ADV}, {"only", PosTag::ADV}, {"even", PosTag::ADV},
        {"also", PosTag::ADV}, {"maybe", PosTag::ADV}, {"perhaps", PosTag::ADV},
        {"soon", PosTag::ADV}, {"already", PosTag::ADV}, {"extremely", PosTag::ADV},
        {"rn", PosTag::ADV}, {"tho", PosTag::ADV}, {"up", PosTag::ADV},
        {"out", PosTag::ADV}, {"down", PosTag::ADV}, {"off", PosTag::ADV},
        {"back", PosTag::ADV}, {"away", PosTag::ADV}, {"more", PosTag::ADV},
        {"most", PosTag::ADV}, {"less", PosTag::ADV}, {"how", PosTag::ADV},
        {"why", PosTag::ADV}, {"where", PosTag::ADV}, {"today", PosTag::ADV},
        {"tomorrow", PosTag::ADV}, {"yesterday", PosTag::ADV}, {"tonight", PosTag::ADV},
        // frequent verbs
        {"go", PosTag::VERB}, {"get", PosTag::VERB}, {"got", PosTag::VERB},
        {"know", PosTag::VERB}, {"think", PosTag::VERB}, {"feel", PosTag::VERB},
        {"felt", PosTag::VERB}, {"want", PosTag::VERB}, {"need", PosTag::VERB},
        {"make", PosTag::VERB}, {"made", PosTag::VERB}, {"see", PosTag::VERB},
        {"saw", PosTag::VERB}, {"say", PosTag::VERB}, {"said", PosTag::VERB},
        {"take", PosTag::VERB}, {"took", PosTag::VERB}, {"come", PosTag::VERB},
        {"came", PosTag::VERB}, {"love", PosTag::VERB}, {"hate", PosTag::VERB},
        {"like", PosTag::VERB}, {"miss", PosTag::VERB}, {"wish", PosTag::VERB},
        {"hope", PosTag::VERB}, {"worry", PosTag::VERB}, {"keep", PosTag::VERB},
        {"let", PosTag::VERB}, {"gonna", PosTag::VERB}, {"gotta", PosTag::VERB},
        {"wanna", PosTag::VERB},
        // frequent adjectives, emotion terms included
        {"good", PosTag::ADJ}, {"bad", PosTag::ADJ}, {"happy", PosTag::ADJ},
        {"sad", PosTag::ADJ}, {"angry", PosTag::ADJ}, {"great", PosTag::ADJ},
        {"terrible", PosTag::ADJ}, {"horrible", PosTag::ADJ}, {"awesome", PosTag::ADJ},
        {"beautiful", PosTag::ADJ}, {"new", PosTag::ADJ}, {"old", PosTag::ADJ},
        {"best", PosTag::ADJ}, {"worst", PosTag::ADJ}, {"better", PosTag::ADJ},
        {"worse", PosTag::ADJ}, {"nice", PosTag::ADJ}, {"fine", PosTag::ADJ},
        {"free", PosTag::ADJ}, {"real", PosTag::ADJ}, {"true", PosTag::ADJ},
        {"hard", PosTag::ADJ}, {"easy", PosTag::ADJ}, {"wrong", PosTag::ADJ},
        {"right", PosTag::ADJ}, {"mad", PosTag::ADJ}, {"glad", PosTag::ADJ},
        {"hilarious", PosTag::ADJ}, {"fuming", PosTag::ADJ}, {"depressing", PosTag::ADJ},
        {"last", PosTag::ADJ}, {"next", PosTag::ADJ}, {"same", PosTag::ADJ},
        {"little", PosTag::ADJ}, {"big", PosTag::ADJ}, {"much", PosTag::ADJ},
        {"many", PosTag::ADJ}, {"few", PosTag::ADJ},
        // emotion nouns
        {"anger", PosTag::NOUN}, {"joy", PosTag::NOUN}, {"optimism", PosTag::NOUN},
        {"sadness", PosTag::NOUN}, {"fear", PosTag::NOUN}, {"fears", PosTag::NOUN},
        {"depression", PosTag::NOUN}, {"outrage", PosTag::NOUN}, {"bully", PosTag::NOUN},
    };
    return lexicon;
}

}  // namespace detail
}  // namespace emoforge
