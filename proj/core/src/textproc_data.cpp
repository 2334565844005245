#include "wsdbench/textproc.hpp"

// Builtin word lists. core/data/stopwords_en.txt and core/data/tag_lexicon_en.txt
// are generated from these tables; a unit test keeps the content hashes equal.

namespace wsd::detail {

const std::vector<std::string>& builtin_stopword_list() {
    static const std::vector<std::string> words = {
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves",
        "you", "your", "yours", "yourself", "yourselves",
        "he", "him", "his", "himself", "she", "her", "hers", "herself",
        "it", "its", "itself", "they", "them", "their", "theirs", "themselves",
        "what", "which", "who", "whom", "this", "that", "these", "those",
        "am", "is", "are", "was", "were", "be", "been", "being",
        "have", "has", "had", "having", "do", "does", "did", "doing",
        "a", "an", "the", "and", "but", "if", "or", "because", "as",
        "until", "while", "of", "at", "by", "for", "with", "about",
        "against", "between", "into", "through", "during", "before", "after",
        "above", "below", "to", "from", "up", "down", "in", "out",
        "on", "off", "over", "under", "again", "further", "then", "once",
        "here", "there", "when", "where", "why", "how",
        "all", "any", "both", "each", "few", "more", "most", "other",
        "some", "such", "no", "nor", "not", "only", "own", "same",
        "so", "than", "too", "very", "s", "t", "can", "will", "just",
        "don", "should", "now"};
    return words;
}

const std::vector<std::pair<std::string, std::string>>& builtin_lexicon_entries() {
    using E = std::pair<std::string, std::string>;
    static const std::vector<E> entries = {
        {"a", "DT"}, {"able", "ADJ"}, {"about", "IN"}, {"above", "IN"},
        {"across", "IN"}, {"after", "IN"}, {"again", "ADV"}, {"against", "IN"},
        {"ah", "UH"}, {"all", "DT"}, {"almost", "ADV"}, {"along", "IN"},
        {"already", "ADV"}, {"also", "ADV"}, {"although", "IN"}, {"always", "ADV"},
        {"am", "VB"}, {"among", "IN"}, {"an", "DT"}, {"and", "CC"},
        {"another", "DT"}, {"any", "DT"}, {"anybody", "PRP"}, {"anyone", "PRP"},
        {"anything", "PRP"}, {"are", "VB"}, {"area", "NN"}, {"around", "IN"},
        {"art", "NN"}, {"as", "IN"}, {"ask", "VB"}, {"asked", "VB"},
        {"at", "IN"}, {"away", "ADV"}, {"back", "NN"}, {"bad", "ADJ"},
        {"bank", "NN"}, {"bar", "NN"}, {"be", "VB"}, {"became", "VB"},
        {"because", "IN"}, {"become", "VB"}, {"been", "VB"}, {"before", "IN"},
        {"began", "VB"}, {"begin", "VB"}, {"begun", "VB"}, {"behind", "IN"},
        {"below", "IN"}, {"beneath", "IN"}, {"beside", "IN"}, {"besides", "IN"},
        {"best", "ADJ"}, {"better", "ADJ"}, {"between", "IN"}, {"beyond", "IN"},
        {"big", "ADJ"}, {"body", "NN"}, {"book", "NN"}, {"both", "DT"},
        {"business", "NN"}, {"but", "CC"}, {"by", "IN"}, {"call", "VB"},
        {"called", "VB"}, {"came", "VB"}, {"can", "VB"}, {"car", "NN"},
        {"case", "NN"}, {"cat", "NN"}, {"child", "NN"}, {"children", "NN"},
        {"church", "NN"}, {"city", "NN"}, {"clear", "ADJ"}, {"come", "VB"},
        {"comes", "VB"}, {"coming", "VB"}, {"community", "NN"}, {"company", "NN"},
        {"could", "VB"}, {"country", "NN"}, {"cross", "VB"}, {"crossed", "VB"},
        {"current", "ADJ"}, {"day", "NN"}, {"despite", "IN"}, {"did", "VB"},
        {"do", "VB"}, {"does", "VB"}, {"dog", "NN"}, {"doing", "VB"},
        {"done", "VB"}, {"door", "NN"}, {"down", "IN"}, {"during", "IN"},
        {"each", "DT"}, {"early", "ADJ"}, {"easy", "ADJ"}, {"eight", "NUM"},
        {"either", "DT"}, {"eleven", "NUM"}, {"end", "NN"}, {"entire", "ADJ"},
        {"er", "UH"}, {"even", "ADV"}, {"ever", "ADV"}, {"every", "DT"},
        {"everybody", "PRP"}, {"everyone", "PRP"}, {"everything", "PRP"},
        {"except", "IN"}, {"eye", "NN"}, {"face", "NN"}, {"fact", "NN"},
        {"family", "NN"}, {"far", "ADV"}, {"father", "NN"}, {"feel", "VB"},
        {"felt", "VB"}, {"few", "DT"}, {"find", "VB"}, {"first", "ADJ"},
        {"five", "NUM"}, {"flow", "VB"}, {"for", "IN"}, {"found", "VB"},
        {"four", "NUM"}, {"free", "ADJ"}, {"friend", "NN"}, {"from", "IN"},
        {"full", "ADJ"}, {"game", "NN"}, {"gave", "VB"}, {"get", "VB"},
        {"gets", "VB"}, {"give", "VB"}, {"given", "VB"}, {"go", "VB"},
        {"goes", "VB"}, {"gone", "VB"}, {"good", "ADJ"}, {"got", "VB"},
        {"gotten", "VB"}, {"government", "NN"}, {"great", "ADJ"}, {"group", "NN"},
        {"had", "VB"}, {"hand", "NN"}, {"hard", "ADJ"}, {"has", "VB"},
        {"have", "VB"}, {"having", "VB"}, {"he", "PRP"}, {"head", "NN"},
        {"health", "NN"}, {"hello", "UH"}, {"help", "VB"}, {"helped", "VB"},
        {"her", "PRP"}, {"here", "ADV"}, {"hers", "PRP"}, {"herself", "PRP"},
        {"hey", "UH"}, {"high", "ADJ"}, {"him", "PRP"}, {"himself", "PRP"},
        {"his", "PRP"}, {"home", "NN"}, {"hour", "NN"}, {"house", "NN"},
        {"how", "WH"}, {"however", "ADV"}, {"hundred", "NUM"}, {"i", "PRP"},
        {"idea", "NN"}, {"if", "IN"}, {"important", "ADJ"}, {"in", "IN"},
        {"information", "NN"}, {"instead", "ADV"}, {"into", "IN"}, {"is", "VB"},
        {"issue", "NN"}, {"it", "PRP"}, {"its", "PRP"}, {"itself", "PRP"},
        {"job", "NN"}, {"just", "ADV"}, {"keep", "VB"}, {"kept", "VB"},
        {"kind", "NN"}, {"knew", "VB"}, {"know", "VB"}, {"known", "VB"},
        {"knows", "VB"}, {"large", "ADJ"}, {"last", "ADJ"}, {"law", "NN"},
        {"leave", "VB"}, {"left", "VB"}, {"let", "VB"}, {"level", "NN"},
        {"life", "NN"}, {"line", "NN"}, {"little", "ADJ"}, {"local", "ADJ"},
        {"long", "ADJ"}, {"lot", "NN"}, {"made", "VB"}, {"major", "ADJ"},
        {"make", "VB"}, {"makes", "VB"}, {"making", "VB"}, {"man", "NN"},
        {"many", "DT"}, {"may", "VB"}, {"maybe", "ADV"}, {"me", "PRP"},
        {"member", "NN"}, {"might", "VB"}, {"million", "NUM"}, {"mine", "PRP"},
        {"minute", "NN"}, {"money", "NN"}, {"month", "NN"}, {"more", "DT"},
        {"most", "DT"}, {"mother", "NN"}, {"move", "VB"}, {"moved", "VB"},
        {"much", "DT"}, {"must", "VB"}, {"my", "PRP"}, {"myself", "PRP"},
        {"name", "NN"}, {"national", "ADJ"}, {"near", "IN"}, {"need", "VB"},
        {"needed", "VB"}, {"neither", "DT"}, {"never", "ADV"}, {"new", "ADJ"},
        {"next", "ADJ"}, {"night", "NN"}, {"nine", "NUM"}, {"no", "DT"},
        {"nobody", "PRP"}, {"nor", "CC"}, {"not", "ADV"}, {"nothing", "PRP"},
        {"now", "ADV"}, {"number", "NN"}, {"of", "IN"}, {"off", "IN"},
        {"office", "NN"}, {"often", "ADV"}, {"oh", "UH"}, {"ok", "UH"},
        {"okay", "UH"}, {"old", "ADJ"}, {"on", "IN"}, {"once", "ADV"},
        {"one", "NUM"}, {"only", "ADV"}, {"onto", "IN"}, {"or", "CC"},
        {"other", "DT"}, {"others", "NN"}, {"our", "PRP"}, {"ours", "PRP"},
        {"ourselves", "PRP"}, {"out", "IN"}, {"over", "IN"}, {"own", "ADJ"},
        {"parent", "NN"}, {"part", "NN"}, {"people", "NN"}, {"per", "IN"},
        {"perhaps", "ADV"}, {"person", "NN"}, {"place", "NN"}, {"play", "VB"},
        {"played", "VB"}, {"please", "UH"}, {"point", "NN"}, {"possible", "ADJ"},
        {"power", "NN"}, {"president", "NN"}, {"problem", "NN"}, {"program", "NN"},
        {"public", "ADJ"}, {"put", "VB"}, {"question", "NN"}, {"quite", "ADV"},
        {"ran", "VB"}, {"rather", "ADV"}, {"real", "ADJ"}, {"really", "ADV"},
        {"recent", "ADJ"}, {"right", "NN"}, {"river", "NN"}, {"room", "NN"},
        {"run", "VB"}, {"said", "VB"}, {"same", "DT"}, {"saw", "VB"},
        {"say", "VB"}, {"saying", "VB"}, {"says", "VB"}, {"school", "NN"},
        {"see", "VB"}, {"seeing", "VB"}, {"seem", "VB"}, {"seemed", "VB"},
        {"seen", "VB"}, {"sees", "VB"}, {"sense", "NN"}, {"service", "NN"},
        {"seven", "NUM"}, {"several", "DT"}, {"shall", "VB"}, {"she", "PRP"},
        {"should", "VB"}, {"show", "VB"}, {"showed", "VB"}, {"side", "NN"},
        {"since", "IN"}, {"six", "NUM"}, {"small", "ADJ"}, {"so", "CC"},
        {"social", "ADJ"}, {"some", "DT"}, {"somebody", "PRP"}, {"someone", "PRP"},
        {"something", "PRP"}, {"sometimes", "ADV"}, {"soon", "ADV"},
        {"special", "ADJ"}, {"start", "VB"}, {"started", "VB"}, {"state", "NN"},
        {"still", "ADV"}, {"story", "NN"}, {"street", "NN"}, {"strong", "ADJ"},
        {"student", "NN"}, {"study", "NN"}, {"such", "DT"}, {"sure", "ADJ"},
        {"system", "NN"}, {"take", "VB"}, {"taken", "VB"}, {"takes", "VB"},
        {"taking", "VB"}, {"team", "NN"}, {"tell", "VB"}, {"ten", "NUM"},
        {"than", "IN"}, {"that", "DT"}, {"the", "DT"}, {"their", "PRP"},
        {"theirs", "PRP"}, {"them", "PRP"}, {"themselves", "PRP"}, {"then", "ADV"},
        {"there", "ADV"}, {"these", "DT"}, {"they", "PRP"}, {"thing", "NN"},
        {"think", "VB"}, {"thinks", "VB"}, {"this", "DT"}, {"those", "DT"},
        {"thought", "VB"}, {"thousand", "NUM"}, {"three", "NUM"}, {"through", "IN"},
        {"time", "NN"}, {"to", "IN"}, {"together", "ADV"}, {"told", "VB"},
        {"too", "ADV"}, {"took", "VB"}, {"toward", "IN"}, {"towards", "IN"},
        {"tree", "NN"}, {"tried", "VB"}, {"try", "VB"}, {"turn", "VB"},
        {"turned", "VB"}, {"twelve", "NUM"}, {"twenty", "NUM"}, {"two", "NUM"},
        {"uh", "UH"}, {"um", "UH"}, {"under", "IN"}, {"unless", "IN"},
        {"until", "IN"}, {"up", "IN"}, {"upon", "IN"}, {"us", "PRP"},
        {"use", "VB"}, {"used", "VB"}, {"using", "VB"}, {"usually", "ADV"},
        {"very", "ADV"}, {"want", "VB"}, {"wanted", "VB"}, {"was", "VB"},
        {"water", "NN"}, {"way", "NN"}, {"we", "PRP"}, {"week", "NN"},
        {"well", "ADV"}, {"went", "VB"}, {"were", "VB"}, {"what", "WH"},
        {"whatever", "WH"}, {"when", "WH"}, {"whenever", "WH"}, {"where", "WH"},
        {"whereas", "IN"}, {"wherever", "WH"}, {"whether", "IN"}, {"which", "WH"},
        {"whichever", "WH"}, {"while", "IN"}, {"who", "WH"}, {"whoever", "WH"},
        {"whole", "ADJ"}, {"whom", "WH"}, {"whose", "WH"}, {"why", "WH"},
        {"will", "VB"}, {"with", "IN"}, {"within", "IN"}, {"without", "IN"},
        {"woman", "NN"}, {"word", "NN"}, {"work", "VB"}, {"worked", "VB"},
        {"world", "NN"}, {"would", "VB"}, {"wow", "UH"}, {"year", "NN"},
        {"yeah", "UH"}, {"yes", "UH"}, {"yet", "CC"}, {"you", "PRP"},
        {"young", "ADJ"}, {"your", "PRP"}, {"yours", "PRP"}, {"yourself", "PRP"},
        {"yourselves", "PRP"}};
    return entries;
}

} // namespace wsd::detail
