class DayWord {
    String name(int day) {
        switch (day) {
            case 1:
                return "One";
            case 7:
                return "Seven";
        }
        return "Other";
    }
}
