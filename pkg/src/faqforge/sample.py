"""Sample course bundle: a complete knowledge base and template set for a
generic online course, used by ``faqforge init`` and the test fixtures.

The bundle is sized so the generated dataset comfortably exceeds a thousand
unique question-intent pairs, every intent has at least two examples, and one
question ("What are the resources for the course?") is deliberately authored
under two intents to exercise conflict reporting end to end.
"""

from faqforge.kb import parse_kb
from faqforge.templates import parse_templates

UNSTRUCTURED_CATEGORIES = [
    "coursedescription", "teachingstaff", "officehours", "learning",
    "lateworkpolicy", "intellectualpropertypolicy", "importantdates",
    "disabilityaccomodations", "courseprerequisites", "coursematerials",
    "grade", "definition",
]

STRUCTURED_CATEGORIES = [
    "description", "weight", "releasedate", "duedate", "week", "submission",
    "grading", "duration", "estimatedtime", "url", "resources", "guideline",
]

_TOPICS = [
    "artificial intelligence", "machine learning", "knowledge representation",
    "semantic networks", "production systems", "case based reasoning",
    "planning", "logic", "search", "classification", "constraint propagation",
    "metacognition", "analogical reasoning", "version spaces",
]

_TERMS = {
    "semantic network": "A semantic network is a graph of concepts linked by labeled relations.",
    "production system": "A production system pairs a working memory with if-then rules fired by a control loop.",
    "frame representation": "A frame groups the attributes and defaults of a stereotyped situation into slots.",
    "case based reasoning": "Case based reasoning solves a new problem by adapting the solution of a similar past case.",
    "means ends analysis": "Means ends analysis picks operators that reduce the difference between the current state and the goal.",
    "generate and test": "Generate and test proposes candidate solutions and discards those that fail a check.",
    "version space": "A version space is the set of hypotheses consistent with the examples seen so far.",
    "incremental concept learning": "Incremental concept learning refines a concept definition one labeled example at a time.",
    "script representation": "A script encodes the expected sequence of events in a routine situation.",
    "explanation based learning": "Explanation based learning generalizes from one example by explaining why it works.",
    "commonsense reasoning": "Commonsense reasoning fills gaps in a problem statement with everyday world knowledge.",
    "constraint satisfaction": "Constraint satisfaction assigns values to variables subject to a set of constraints.",
    "problem reduction": "Problem reduction decomposes a hard problem into easier subproblems solved separately.",
    "truth maintenance": "A truth maintenance system tracks the justifications of beliefs so retractions propagate.",
    "mistake driven learning": "Mistake driven learning updates the learner only when its prediction was wrong.",
}

_DATE_NAMES = [
    "withdraw date", "start date", "drop deadline", "spring break",
    "reading period", "registration deadline", "semester end",
]


def _fact(fid, label, keywords, text, source):
    return {"id": fid, "label": label, "keywords": keywords,
            "response_text": text, "response_source": source}


def _entity(eid, identified, keywords, **attributes):
    return {"id": eid, "identified": identified, "object_keywords": keywords,
            "attributes": attributes}


def sample_kb_dict() -> dict:
    facts = [
        _fact(1, "coursedescription", _TOPICS,
              "This course surveys techniques for building knowledge-based agents, "
              "from representation and reasoning to learning.",
              "syllabus#description"),
        _fact(2, "teachingstaff", ["instructor", "professor", "teaching assistants", "course staff"],
              "The course is taught by Dr. Rivera with a team of four teaching assistants; "
              "reach the whole staff through the course inbox.",
              "syllabus#staff"),
        _fact(3, "officehours", ["office hours", "help desk"],
              "Office hours run Tuesdays and Thursdays from 4pm to 6pm in the course video lobby.",
              "syllabus#office-hours"),
        _fact(4, "learning", ["learning goals", "learning outcomes", "skills"],
              "By the end of the course you will be able to model a domain, build a reasoning "
              "agent over it, and evaluate the agent against human performance.",
              "syllabus#goals"),
        _fact(5, "lateworkpolicy", ["late", "past the deadline", "grace period", "penalty"],
              "Late work loses 10 percent per day for up to three days; after that it is not accepted.",
              "syllabus#late-work"),
        _fact(6, "intellectualpropertypolicy", ["public platform", "github", "share", "publish"],
              "Posting your solutions on a public platform is an honor-code violation while the "
              "course is running; private repositories are fine.",
              "syllabus#honor-code"),
        _fact(7, "importantdates", _DATE_NAMES,
              "Key dates: the term starts May 16, the withdraw date is July 9, and the semester "
              "ends August 14; the full calendar is on the registrar page.",
              "registrar#calendar"),
        _fact(8, "disabilityaccomodations", ["disability services", "accommodations", "accessibility"],
              "Students needing accommodations should register with the Office of Disability "
              "Services, then send the accommodation letter to the instructor.",
              "syllabus#accommodations"),
        _fact(9, "courseprerequisites", ["python", "C"],
              "You should be comfortable programming in python; C is useful background but is "
              "not required.",
              "syllabus#prerequisites"),
        _fact(10, "coursematerials",
              ["course materials", "websites", "textbooks", "lecture videos", "readings",
               "slides", "recommended books", "discussion forums", "resources"],
              "All course materials, including lecture videos, readings, and slides, are linked "
              "from the course portal.",
              "syllabus#materials"),
        _fact(11, "grade", ["my grade", "grading scale", "letter grade", "pass"],
              "Final letter grades use the standard scale: A at 90 and above, B at 80, C at 70; "
              "current totals are visible on the gradebook page.",
              "syllabus#grading-scale"),
    ]
    facts.extend(
        _fact(100 + i, "definition", [term], text, "glossary#" + term.replace(" ", "-"))
        for i, (term, text) in enumerate(_TERMS.items())
    )

    entities = [
        _entity(1, "Assignment 1", ["assignment 1", "a1", "first assignment"],
                description="Build an agent that solves small visual analogy puzzles.",
                weight="5%", releasedate="May 18", duedate="June 15", week="4",
                submission="Gradescope", grading="autograder plus TA spot checks",
                estimatedtime="10 hours", url="https://example.edu/course/assignment1",
                resources="starter code repository and rubric",
                guideline="Work alone and cite any external references."),
        _entity(2, "Assignment 2", ["assignment 2", "a2", "second assignment"],
                description="Extend your agent with case based reasoning over stored puzzles.",
                weight="10%", releasedate="June 8", duedate="July 2", week="7",
                submission="Gradescope", grading="autograder plus TA spot checks",
                estimatedtime="15 hours", url="https://example.edu/course/assignment2",
                resources="case library and rubric"),
        _entity(3, "Assignment 3", ["assignment 3", "a3"],
                description="Add incremental concept learning to the puzzle agent.",
                weight="10%", releasedate="June 22", duedate="July 20", week="9",
                submission="Gradescope", grading="autograder plus TA spot checks",
                estimatedtime="15 hours", url="https://example.edu/course/assignment3",
                resources="labeled training puzzles"),
        _entity(4, "Assignment 4", ["assignment 4", "a4", "final assignment"],
                description="Write a reflection comparing your agent to human solvers.",
                weight="5%", releasedate="July 18", duedate="August 3", week="11",
                submission="Canvas", grading="rubric graded by TAs",
                estimatedtime="6 hours", url="https://example.edu/course/assignment4",
                guideline="Five pages maximum, PDF only."),
        _entity(5, "Project 1", ["project 1", "first project", "semester project"],
                description="Design and evaluate a question answering agent for a domain you choose.",
                weight="20%", releasedate="June 1", duedate="July 28", week="10",
                submission="Gradescope", grading="milestone rubric",
                estimatedtime="30 hours", url="https://example.edu/course/project1",
                resources="project handbook", guideline="Teams of two; declare your domain by week 5."),
        _entity(6, "Project 2", ["project 2", "final project"],
                description="Extend your project agent with a learning component and report results.",
                weight="20%", releasedate="July 10", duedate="August 10", week="12",
                submission="Gradescope", grading="milestone rubric",
                estimatedtime="25 hours", url="https://example.edu/course/project2",
                resources="evaluation harness"),
        _entity(7, "Midterm Exam", ["midterm", "midterm exam"],
                description="Closed-book exam covering representation and reasoning.",
                weight="15%", releasedate="June 24", duedate="June 26", week="6",
                submission="online proctored", grading="scaled to the class median",
                duration="90 minutes", url="https://example.edu/course/midterm",
                resources="practice exam from a prior term"),
        _entity(8, "Final Exam", ["final exam", "final"],
                description="Cumulative closed-book exam.",
                weight="15%", releasedate="August 10", duedate="August 12", week="13",
                submission="online proctored", grading="scaled to the class median",
                duration="120 minutes", url="https://example.edu/course/final",
                resources="review packet"),
        _entity(9, "Quiz 1", ["quiz 1"],
                weight="2%", releasedate="May 28", duedate="May 30", week="2",
                submission="Canvas", grading="autograded", duration="20 minutes",
                estimatedtime="30 minutes", url="https://example.edu/course/quiz1"),
        _entity(10, "Quiz 2", ["quiz 2"],
                weight="2%", releasedate="June 18", duedate="June 20", week="5",
                submission="Canvas", grading="autograded", duration="20 minutes",
                estimatedtime="30 minutes", url="https://example.edu/course/quiz2"),
        _entity(11, "Assignment 5", ["assignment 5", "a5"],
                description="Optional extra-credit agent improvement of your choice.",
                weight="3%", releasedate="July 25", duedate="August 8", week="12",
                submission="Gradescope", grading="TA reviewed",
                estimatedtime="8 hours", url="https://example.edu/course/assignment5"),
        _entity(12, "Quiz 3", ["quiz 3"],
                weight="2%", releasedate="July 8", duedate="July 10", week="8",
                submission="Canvas", grading="autograded", duration="20 minutes",
                estimatedtime="30 minutes", url="https://example.edu/course/quiz3"),
        _entity(13, "Peer Feedback", ["peer feedback", "peer review"],
                description="Structured review of two classmates' project milestone reports.",
                weight="3%", releasedate="July 14", duedate="July 21", week="9",
                submission="Canvas", grading="completion graded",
                estimatedtime="2 hours", url="https://example.edu/course/peerfeedback"),
    ]

    return {
        "domain": "knowledge-based agents online course",
        "categories": (
            [{"label": label, "kind": "unstructured"} for label in UNSTRUCTURED_CATEGORIES]
            + [{"label": label, "kind": "structured"} for label in STRUCTURED_CATEGORIES]
        ),
        "unstructured": facts,
        "structured": entities,
        "attribute_patterns": {},
    }


_ENTITY_SOURCE = "structured:object_keywords"

# (intent, template, keyword_source, example-row flag)
_TEMPLATE_ROWS = [
    ("coursedescription", "Will we learn about {user} in this class?", "unstructured:coursedescription", True),
    ("coursedescription", "Does this course cover {topic}?", "unstructured:coursedescription", False),
    ("coursedescription", "Is {topic} part of the syllabus?", "unstructured:coursedescription", False),
    ("coursedescription", "What is this course about?", None, False),
    ("coursedescription", "Can you give a short overview of the course?", None, False),

    ("teachingstaff", "Who teaches this class?", None, True),
    ("teachingstaff", "Who is teaching the course this term?", None, False),
    ("teachingstaff", "Who teaches the lectures?", None, False),
    ("teachingstaff", "Who is the instructor?", None, False),
    ("teachingstaff", "Who is the course instructor?", None, False),
    ("teachingstaff", "Who is the instructor for this class?", None, False),
    ("teachingstaff", "Who is the professor?", None, False),
    ("teachingstaff", "Who is the lead professor?", None, False),
    ("teachingstaff", "Who is the TA for this class?", None, False),
    ("teachingstaff", "Who are the teaching assistants?", None, False),
    ("teachingstaff", "Who are the TAs?", None, False),
    ("teachingstaff", "Who are the instructors?", None, False),
    ("teachingstaff", "Who are the graders?", None, False),
    ("teachingstaff", "Who is on the teaching staff?", None, False),
    ("teachingstaff", "How do I contact the teaching staff?", None, False),
    ("teachingstaff", "How do I email the teaching staff?", None, False),

    ("officehours", "When are office hours this week?", None, True),
    ("officehours", "What time are office hours held?", None, False),
    ("officehours", "Where do office hours take place?", None, False),
    ("officehours", "Are there office hours on the weekend?", None, False),
    ("officehours", "When can I come to office hours?", None, False),
    ("officehours", "Are office hours recorded?", None, False),

    ("learning", "What are the learning goals of this class?", None, True),
    ("learning", "What are the learning outcomes?", None, False),
    ("learning", "What are the expected learning outcomes?", None, False),
    ("learning", "What are the learning objectives of the course?", None, False),
    ("learning", "What learning goals does this class have?", None, False),
    ("learning", "What are the learning goals for the semester?", None, False),
    ("learning", "What skills will I gain from this course?", None, False),
    ("learning", "What should I be able to do by the end of the course?", None, False),
    ("learning", "What are the main takeaways of this class?", None, False),
    ("learning", "Do the learning objectives change each term?", None, False),

    ("lateworkpolicy", "What is the penalty for submitting work past the deadline?", None, True),
    ("lateworkpolicy", "Can I submit {object} late?", _ENTITY_SOURCE, False),
    ("lateworkpolicy", "What happens if I miss a deadline?", None, False),
    ("lateworkpolicy", "Is there a grace period for late submissions?", None, False),
    ("lateworkpolicy", "Does the grace period apply to late work?", None, False),
    ("lateworkpolicy", "What is the late work policy?", None, False),
    ("lateworkpolicy", "What is the penalty for late work?", None, False),
    ("lateworkpolicy", "Is there a late penalty?", None, False),
    ("lateworkpolicy", "Do you accept late work?", None, False),
    ("lateworkpolicy", "Is late work accepted?", None, False),
    ("lateworkpolicy", "Will I be penalized for submitting after the deadline?", None, False),
    ("lateworkpolicy", "Can I turn in work after the deadline?", None, False),

    ("intellectualpropertypolicy", "Can I post my work on a public platform?", None, True),
    ("intellectualpropertypolicy", "Am I allowed to share my code on github?", None, False),
    ("intellectualpropertypolicy", "Can I publish my solutions online?", None, False),
    ("intellectualpropertypolicy", "Is sharing my work publicly an honor code violation?", None, False),

    ("importantdates", "When is the {object}?", "literal:withdraw date|start date", True),
    ("importantdates", "When is {object}?", "unstructured:importantdates", False),
    ("importantdates", "What day is the {object}?", "unstructured:importantdates", False),
    ("importantdates", "What is the date of the {object}?", "unstructured:importantdates", False),
    ("importantdates", "When does the {object} happen?", "unstructured:importantdates", False),
    ("importantdates", "When does the semester start?", None, False),
    ("importantdates", "When does the term end?", None, False),
    ("importantdates", "Is there an academic calendar for the term?", None, False),

    ("disabilityaccomodations", "Where can I find information about Disability Services?", None, True),
    ("disabilityaccomodations", "How do I request accommodations?", None, False),
    ("disabilityaccomodations", "How do I get disability accommodations?", None, False),
    ("disabilityaccomodations", "How do I register with disability services?", None, False),
    ("disabilityaccomodations", "Who do I contact about accessibility support?", None, False),
    ("disabilityaccomodations", "Who do I talk to about extended time accommodations?", None, False),
    ("disabilityaccomodations", "Who do I send my accommodation letter to?", None, False),
    ("disabilityaccomodations", "What accommodations are available for students with disabilities?", None, False),

    ("courseprerequisites", "Do we need to know {object} to take this course?", "unstructured:courseprerequisites", True),
    ("courseprerequisites", "What prerequisites does this course have?", None, False),
    ("courseprerequisites", "Does this course have prerequisites?", None, False),
    ("courseprerequisites", "Does this class have any prerequisites?", None, False),
    ("courseprerequisites", "Does this course expect prior coursework?", None, False),
    ("courseprerequisites", "Is there a list of prerequisites?", None, False),
    ("courseprerequisites", "Do I need prior programming experience?", None, False),
    ("courseprerequisites", "What background is expected before taking this class?", None, False),
    ("courseprerequisites", "Is prior experience with python required?", None, False),
    ("courseprerequisites", "Should I know how to program before enrolling?", None, False),

    ("coursematerials", "What are the {object} for the course?", "unstructured:coursematerials", True),
    ("coursematerials", "Where are the {object} posted?", "unstructured:coursematerials", False),
    ("coursematerials", "Is there a required textbook?", None, False),
    ("coursematerials", "Do I have to buy a textbook for this course?", None, False),

    ("grade", "How is my final grade calculated?", None, False),
    ("grade", "How is my grade computed?", None, False),
    ("grade", "What will my final grade be based on?", None, False),
    ("grade", "What letter grade do I need to pass?", None, False),
    ("grade", "What grade do I need to pass the course?", None, False),
    ("grade", "Where can I see my current grade?", None, False),
    ("grade", "How are letter grades assigned?", None, False),
    ("grade", "Are final grades curved?", None, False),

    ("definition", "Can you give an explanation for {object}?", "unstructured:definition", True),
    ("definition", "What does {object} mean?", "unstructured:definition", False),
    ("definition", "Can you define {object}?", "unstructured:definition", False),

    ("duedate", "When is {object} due?", _ENTITY_SOURCE, False),
    ("duedate", "What is the due date for {object}?", _ENTITY_SOURCE, False),
    ("duedate", "By when must {object} be submitted?", _ENTITY_SOURCE, False),

    ("releasedate", "When will {object} be released?", _ENTITY_SOURCE, False),
    ("releasedate", "When does {object} open?", _ENTITY_SOURCE, False),
    ("releasedate", "What is the release date for {object}?", _ENTITY_SOURCE, False),
    ("releasedate", "What day does {object} become available?", _ENTITY_SOURCE, False),

    ("weight", "How much is {object} worth?", _ENTITY_SOURCE, False),
    ("weight", "What percentage of the grade is {object}?", _ENTITY_SOURCE, False),
    ("weight", "How many points is {object} worth?", _ENTITY_SOURCE, False),
    ("weight", "How heavily is {object} weighted?", _ENTITY_SOURCE, False),

    ("description", "What is {object} about?", _ENTITY_SOURCE, False),
    ("description", "What do we have to do for {object}?", _ENTITY_SOURCE, False),
    ("description", "Can you describe {object}?", _ENTITY_SOURCE, False),

    ("week", "What week is {object} assigned?", _ENTITY_SOURCE, False),
    ("week", "Which week does {object} happen in?", _ENTITY_SOURCE, False),

    ("submission", "Where do I submit {object}?", _ENTITY_SOURCE, False),
    ("submission", "What platform do we use to submit {object}?", _ENTITY_SOURCE, False),
    ("submission", "Do we submit {object} on Gradescope?", _ENTITY_SOURCE, False),

    ("grading", "How is {object} graded?", _ENTITY_SOURCE, False),
    ("grading", "What is the grading rubric for {object}?", _ENTITY_SOURCE, False),

    ("duration", "How long is {object}?", _ENTITY_SOURCE, False),
    ("duration", "How much time do we get for {object}?", _ENTITY_SOURCE, False),

    ("estimatedtime", "How long should {object} take?", _ENTITY_SOURCE, False),
    ("estimatedtime", "How many hours should I budget for {object}?", _ENTITY_SOURCE, False),

    ("url", "What is the link for {object}?", _ENTITY_SOURCE, False),
    ("url", "Where is the page for {object}?", _ENTITY_SOURCE, False),
    ("url", "Where is the webpage for {object}?", _ENTITY_SOURCE, False),

    ("resources", "What are the resources for {object}?", _ENTITY_SOURCE, False),
    ("resources", "Which resources go with {object}?", _ENTITY_SOURCE, False),
    # Deliberate cross-intent duplicate with the coursematerials "resources" fill.
    ("resources", "What are the resources for the course?", None, False),

    ("guideline", "What are the guidelines for {object}?", _ENTITY_SOURCE, False),
    ("guideline", "Are there guidelines for {object}?", _ENTITY_SOURCE, False),
]



def sample_templates_list() -> list:
    return [
        {"id": i, "intent": intent, "keyword_source": source,
         "template": template, "example": example}
        for i, (intent, template, source, example) in enumerate(_TEMPLATE_ROWS, start=1)
    ]


def sample_kb():
    import json
    return parse_kb(json.dumps(sample_kb_dict()))


def sample_templates():
    import json
    return parse_templates(json.dumps(sample_templates_list()))
