import java.util.ArrayList;
import java.util.List;

class Repeater {
    List<String> repeat(String word, int times) {
        List<String> items = new ArrayList<String>();
        for (int i = 0; i < times; i++) {
            String copy = new String(word);
            items.add(copy);
        }
        return items;
    }
}
