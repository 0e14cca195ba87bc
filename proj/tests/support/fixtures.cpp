#include "support/fixtures.hpp"

#include <map>

namespace curate::testing::fixtures {

namespace {

struct Bank {
    std::vector<std::string> subjects;
    std::vector<std::string> verbs;
    std::vector<std::string> objects;
    std::vector<std::string> modifiers;
};

// English phrases are capped at two words per slot: a duplicated 5-gram then
// needs three slots to collide at once, which keeps generated documents
// under the dup-n-gram thresholds.
const Bank& en_bank(std::string_view domain) {
    static const std::map<std::string, Bank, std::less<>> banks = {
        {"finance",
         {{"the market", "the investor", "the exchange", "the regulator",
           "the analyst", "the committee", "the treasury", "the auditor"},
          {"reported", "adjusted", "projected", "reviewed", "estimated", "tracked",
           "balanced", "hedged"},
          {"quarterly earnings", "interest rates", "bond yields", "equity prices",
           "dividend payouts", "capital reserves", "inflation figures",
           "currency positions", "trading volumes", "credit spreads",
           "budget forecasts", "risk limits"},
          {"this quarter", "last month", "despite volatility", "after hours",
           "before trading", "with caution", "under review", "across markets",
           "in tandem", "on schedule", "without delay", "since spring"}}},
        {"law",
         {{"the court", "the plaintiff", "the defendant", "the tribunal", "the counsel",
           "the arbitrator", "the registrar", "the panel"},
          {"examined", "upheld", "dismissed", "interpreted", "amended", "enforced",
           "contested", "reviewed"},
          {"the contract", "the appeal", "the motion", "the statute", "the verdict",
           "the settlement", "the testimony", "the injunction", "the indictment",
           "the petition", "the clause", "the ruling"},
          {"on appeal", "in chambers", "without prejudice", "after argument",
           "under seal", "by consent", "with costs", "at trial", "this term",
           "in dissent", "on remand", "per curiam"}}},
        {"medical",
         {{"the physician", "the patient", "the clinic", "the researcher", "the nurse",
           "the laboratory", "the hospital", "the specialist"},
          {"monitored", "diagnosed", "treated", "measured", "documented", "evaluated",
           "screened", "observed"},
          {"the symptoms", "blood pressure", "the dosage", "the recovery",
           "the infection", "heart rhythm", "the biopsy", "the scans", "the trial",
           "lung function", "the wound", "the fever"},
          {"every week", "at follow-up", "with consent", "in the ward", "per protocol",
           "despite setbacks", "overnight", "after surgery", "during rounds",
           "by morning", "under observation", "as planned"}}},
        {"other",
         {{"the gardener", "the traveler", "the musician", "the teacher", "the neighbor",
           "the carpenter", "the student", "the painter"},
          {"described", "finished", "arranged", "enjoyed", "repaired", "collected",
           "photographed", "prepared"},
          {"the fence", "the coffee", "the trail", "the concert", "the garden",
           "the bicycle", "the festival", "the books", "the kitchen", "the canoe",
           "the mural", "the workshop"},
          {"at dawn", "last summer", "with patience", "quite happily", "on sunday",
           "after lunch", "by hand", "all afternoon", "once more", "in town",
           "rather quickly", "together"}}},
    };
    auto it = banks.find(domain);
    return it == banks.end() ? banks.find("other")->second : it->second;
}

// Korean eojeol are kept 3+ syllables so the average word length clears the
// English-cloned threshold.
const Bank& ko_bank(std::string_view domain) {
    static const std::map<std::string, Bank, std::less<>> banks = {
        {"finance",
         {{"금융시장은", "투자자들이", "중앙은행이", "증권거래소는", "자산운용사가",
           "경제분석가는"},
          {"발표했다.", "분석했다.", "전망했다.", "조정했다.", "검토했다.", "기록했다."},
          {"분기실적을", "기준금리를", "채권수익률을", "주가지수를", "배당정책을",
           "외환보유액을"},
          {"회계연도에", "신흥시장에서", "변동성에도", "발표이후에", "감사이전에",
           "정책변화로"}}},
        {"law",
         {{"재판부는", "원고측이", "피고인이", "중재기관은", "변호인단이", "입법기관은"},
          {"판결했다.", "기각했다.", "해석했다.", "개정했다.", "집행했다.", "심리했다."},
          {"계약조항을", "손해배상을", "법정의무를", "항소기록을", "합의제안을",
           "증거기준을"},
          {"항소심에서", "관습법상으로", "구두변론후에", "법률에따라", "절차적으로",
           "판례를근거로"}}},
        {"medical",
         {{"담당의사는", "환자들이", "연구진은", "간호사들이", "검사실에서", "전문의가"},
          {"진단했다.", "치료했다.", "관찰했다.", "측정했다.", "기록했다.", "평가했다."},
          {"만성증상을", "혈압수치를", "치료반응을", "투약일정을", "회복경과를",
           "임상시험을"},
          {"수주동안에", "추적관찰중에", "동의하에서", "외래병동에서", "지침에따라",
           "부작용없이"}}},
        {"other",
         {{"정원사는", "여행자들이", "음악가들이", "선생님들이", "이웃주민이",
           "학생들이"},
          {"준비했다.", "완성했다.", "정리했다.", "수리했다.", "촬영했다.", "즐겼다."},
          {"나무울타리를", "아침식사를", "산책코스를", "학교축제를", "채소밭을",
           "자전거를"},
          {"강변근처에서", "비오기전에", "오후시간에", "헛간뒤에서", "해안을따라",
           "천천히함께"}}},
    };
    auto it = banks.find(domain);
    return it == banks.end() ? banks.find("other")->second : it->second;
}

// ja/th tokenize per character, so any repeated phrase of 5+ characters
// shows up in the duplicate-n-gram metrics. These banks hold whole
// sentences and document_text draws them without replacement, keeping
// generated documents clear of the dup-gram thresholds.
const std::vector<std::string>& ja_sentences(std::string_view domain) {
    static const std::vector<std::string> finance = {
        "株価は朝から上げ幅を広げた。",
        "中央銀行は金利を据え置くと発表。",
        "円相場は小幅な動きにとどまる。",
        "投資家の関心は新興国へ移りつつある。",
        "決算発表を受けて売買が活発になった。",
        "債券市場では利回りが低下している。",
        "監査報告の内容に大きな問題はない。",
        "配当方針の見直しが株主に示された。",
        "為替の変動が輸出企業の重荷となる。",
        "預金残高は前年比で緩やかに増えた。",
        "景気の先行きには慎重な見方が多い。",
        "基金の運用成績は目標を上回った。",
        "物価上昇の影響が家計に及んでいる。",
        "証券会社は手数料の引き下げを検討中。",
        "融資の審査基準がやや厳しくなった。",
        "税制の変更が企業業績を左右する。",
        "取引所は新しい上場制度を公表した。",
        "保険各社は商品の改定を進めている。",
    };
    static const std::vector<std::string> other = {
        "朝の公園で犬がゆっくり歩いていた。",
        "図書館は静かで居心地がよい。",
        "子どもたちは川辺で石を集めた。",
        "祭りの準備が町全体で進む。",
        "古い自転車を直して弟に渡した。",
        "山の頂から海がかすかに見えた。",
        "夕飯は野菜の多い鍋にした。",
        "雨上がりの空に虹がかかる。",
        "音楽会の練習は夜まで続いた。",
        "庭の花が今年もきれいに咲く。",
        "旅先で出会った人と手紙を交わす。",
        "近所の店は昼過ぎまで混んでいた。",
        "冬支度のため薪を多めに割った。",
        "写真集を開くと昔の記憶が戻る。",
        "駅前の通りに新しい看板が立つ。",
        "休日は家族でパンを焼いて過ごす。",
        "猫は窓際で長い昼寝をしている。",
        "畑の土を耕して種をまいた。",
    };
    return domain == "finance" ? finance : other;
}

// Thai has no native sentence-final period; one is appended so the
// terminal-punctuation metric has something to see.
const std::vector<std::string>& th_sentences(std::string_view domain) {
    static const std::vector<std::string> finance = {
        "ตลาดหุ้นปรับตัวขึ้นในช่วงเช้า.",
        "ธนาคารกลางคงอัตราดอกเบี้ยไว้.",
        "ค่าเงินบาทเคลื่อนไหวในกรอบแคบ.",
        "นักลงทุนหันไปสนใจตลาดเกิดใหม่.",
        "ผลประกอบการหนุนการซื้อขายคึกคัก.",
        "อัตราผลตอบแทนพันธบัตรลดลงต่อเนื่อง.",
        "รายงานตรวจสอบไม่พบปัญหาสำคัญ.",
        "บริษัทเสนอทบทวนนโยบายปันผล.",
        "ความผันผวนของค่าเงินกดดันผู้ส่งออก.",
        "ยอดเงินฝากเพิ่มขึ้นจากปีก่อน.",
        "นักวิเคราะห์มองเศรษฐกิจอย่างระมัดระวัง.",
        "กองทุนทำผลงานได้เหนือเป้าหมาย.",
        "เงินเฟ้อกระทบค่าครองชีพของครัวเรือน.",
        "โบรกเกอร์พิจารณาลดค่าธรรมเนียม.",
        "เกณฑ์สินเชื่อเข้มงวดมากขึ้น.",
        "การปรับภาษีมีผลต่อกำไรบริษัท.",
        "ตลาดหลักทรัพย์ประกาศกฎใหม่.",
        "บริษัทประกันเร่งปรับปรุงผลิตภัณฑ์.",
    };
    static const std::vector<std::string> other = {
        "สวนหลังบ้านเขียวขึ้นหลังฝนตก.",
        "ห้องสมุดเงียบและนั่งสบาย.",
        "เด็กๆเก็บก้อนหินริมลำธาร.",
        "งานวัดปีนี้เตรียมกันทั้งตำบล.",
        "จักรยานเก่าซ่อมแล้วยกให้น้อง.",
        "จากยอดเขามองเห็นทะเลไกลๆ.",
        "มื้อเย็นเป็นแกงผักหลายชนิด.",
        "ท้องฟ้าหลังฝนมีรุ้งพาดผ่าน.",
        "วงดนตรีซ้อมต่อจนถึงค่ำ.",
        "ดอกไม้ในสวนบานสะพรั่งอีกปี.",
        "เพื่อนใหม่จากทริปยังเขียนจดหมายมา.",
        "ร้านแถวบ้านคนแน่นถึงบ่าย.",
        "ผ่าฟืนเก็บไว้ใช้หน้าหนาว.",
        "เปิดอัลบั้มรูปแล้วคิดถึงวันเก่า.",
        "ป้ายร้านใหม่ตั้งอยู่หน้าสถานี.",
        "วันหยุดทั้งบ้านช่วยกันอบขนมปัง.",
        "แมวนอนกลางวันยาวริมหน้าต่าง.",
        "พรวนดินแปลงผักแล้วหยอดเมล็ด.",
    };
    return domain == "finance" ? finance : other;
}

const std::string& pick(const std::vector<std::string>& v, Rng& rng) {
    return v[rng.next_below(v.size())];
}

}  // namespace

std::string sentence(std::string_view lang, std::string_view domain, Rng& rng) {
    if (lang == "ko") {
        const Bank& b = ko_bank(domain);
        return pick(b.subjects, rng) + " " + pick(b.modifiers, rng) + " " +
               pick(b.objects, rng) + " " + pick(b.verbs, rng);
    }
    if (lang == "ja") return pick(ja_sentences(domain), rng);
    if (lang == "th") return pick(th_sentences(domain), rng);
    const Bank& b = en_bank(domain);
    std::string subject = pick(b.subjects, rng);
    subject[0] = static_cast<char>(subject[0] - 'a' + 'A');
    std::string s = subject + " " + pick(b.verbs, rng) + " " + pick(b.objects, rng) + " " +
                    pick(b.modifiers, rng);
    switch (rng.next_below(8)) {
        case 0: s.push_back('!'); break;
        case 1: s.push_back('?'); break;
        default: s.push_back('.');
    }
    return s;
}

std::string document_text(std::string_view lang, std::string_view domain, Rng& rng,
                          int lines, int sentences_per_line) {
    // For template languages, draw without replacement so a document never
    // repeats a sentence (repeats would trip the dup-n-gram metrics).
    std::vector<std::size_t> order;
    const std::vector<std::string>* bank = nullptr;
    if (lang == "ja") bank = &ja_sentences(domain);
    if (lang == "th") bank = &th_sentences(domain);
    std::size_t cursor = 0;
    auto next_sentence = [&]() -> std::string {
        if (!bank) return sentence(lang, domain, rng);
        if (cursor == order.size()) {
            order.resize(bank->size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            rng.shuffle(order);
            cursor = 0;
        }
        return (*bank)[order[cursor++]];
    };
    std::string text;
    for (int i = 0; i < lines; ++i) {
        if (i) text.push_back('\n');
        for (int s = 0; s < sentences_per_line; ++s) {
            if (s) text.push_back(' ');
            text += next_sentence();
        }
    }
    return text;
}

std::vector<LabeledExample> lang_examples(std::size_t per_lang, std::uint64_t seed) {
    const std::vector<std::string> langs = {"en", "ko", "ja", "th"};
    const std::vector<std::string> domains = {"finance", "law", "medical", "other"};
    Rng rng(seed);
    std::vector<LabeledExample> out;
    for (std::size_t i = 0; i < per_lang; ++i) {
        for (const std::string& lang : langs) {
            const std::string& domain = domains[rng.next_below(domains.size())];
            out.push_back({document_text(lang, domain, rng, 3, 1), lang});
        }
    }
    return out;
}

std::vector<LabeledExample> domain_examples(std::size_t per_domain, std::uint64_t seed) {
    const std::vector<std::string> domains = {"finance", "law", "medical", "other"};
    Rng rng(seed);
    std::vector<LabeledExample> out;
    for (std::size_t i = 0; i < per_domain; ++i) {
        for (const std::string& domain : domains) {
            const std::string lang = rng.next_below(2) ? "en" : "ko";
            out.push_back({document_text(lang, domain, rng, 3, 2), domain});
        }
    }
    return out;
}

std::string spam_text(Rng& rng) {
    const std::vector<std::string> fragments = {
        "BUY NOW!!!", "CLICK HERE", "FREE FREE FREE", "$$$ WIN BIG $$$",
        "limited offer!!!", "qwerty asdf zxcv", "aaaaaaa bbbbbbb", "!!!! ????",
        "cheap deals cheap deals", "SUBSCRIBE SUBSCRIBE",
    };
    std::string text;
    const int n = 6 + static_cast<int>(rng.next_below(6));
    for (int i = 0; i < n; ++i) {
        if (i) text.push_back(i % 3 == 2 ? '\n' : ' ');
        text += fragments[rng.next_below(fragments.size())];
    }
    return text;
}

const std::vector<std::string>& boilerplate_lines(std::string_view lang) {
    static const std::vector<std::string> en = {
        "Leave a Comment", "Skip to Main Content", "Last Updated", "Scroll to Top",
        "Share",
    };
    static const std::vector<std::string> ko = {
        "본문 바로가기", "콘텐츠로 건너뛰기", "답글 남기기", "이 기사를 공유합니다",
        "자주 묻는 질문",
    };
    return lang == "ko" ? ko : en;
}

Document make_document(const std::string& id, const std::string& url,
                       std::string_view lang, std::string_view domain, Rng& rng,
                       int lines) {
    Document doc;
    doc.id = id;
    doc.url = url;
    doc.lang = std::string(lang);
    doc.lang_score = 0.99;
    doc.text = document_text(lang, domain, rng, lines);
    return doc;
}

}  // namespace curate::testing::fixtures
