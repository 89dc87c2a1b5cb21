import java.io.FileReader;
import java.io.IOException;

class FirstChar {
    int read(String path) throws IOException {
        FileReader reader = new FileReader(path);
        int first = reader.read();
        return first;
    }
}
